#include "vertexlab/signature.hpp"

#include "vertexlab/errors.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace vertexlab {

Signature::Signature(std::vector<int> parts) : parts_(std::move(parts)) {
    for (int p : parts_) {
        if (p < 0) throw ArgumentError("signature parts must be nonnegative");
    }
    std::sort(parts_.begin(), parts_.end(), std::greater<int>());
}

Signature Signature::from_multiplicities(const std::map<int, int>& counts) {
    std::vector<int> parts;
    for (auto it = counts.rbegin(); it != counts.rend(); ++it) {
        if (it->second < 0) throw ArgumentError("negative multiplicity");
        parts.insert(parts.end(), static_cast<std::size_t>(it->second), it->first);
    }
    return Signature(std::move(parts));
}

long Signature::size() const { return std::accumulate(parts_.begin(), parts_.end(), 0L); }

std::map<int, int> Signature::multiplicities() const {
    std::map<int, int> out;
    for (int p : parts_) ++out[p];
    return out;
}

int Signature::multiplicity(int k) const {
    return static_cast<int>(std::count(parts_.begin(), parts_.end(), k));
}

Signature Signature::shifted(int r) const {
    std::vector<int> parts = parts_;
    for (int& p : parts) p += r;
    return Signature(std::move(parts));
}

std::string Signature::str() const {
    std::string out = "(";
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(parts_[i]);
    }
    return out + ")";
}

std::vector<Signature> enumerate_signatures(int length, int lo, int hi) {
    std::vector<Signature> out;
    if (length < 0 || hi < lo) return out;
    std::vector<int> parts(static_cast<std::size_t>(length));
    std::function<void(int, int)> rec = [&](int idx, int cap) {
        if (idx == length) {
            out.emplace_back(parts);
            return;
        }
        for (int v = cap; v >= lo; --v) {
            parts[static_cast<std::size_t>(idx)] = v;
            rec(idx + 1, v);
        }
    };
    rec(0, hi);
    return out;
}

Signature parse_signature(const std::string& text) {
    std::vector<int> parts;
    std::size_t start = 0;
    while (start < text.size()) {
        auto comma = text.find(',', start);
        std::string piece = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (!piece.empty()) {
            try {
                std::size_t used = 0;
                parts.push_back(std::stoi(piece, &used));
                if (used != piece.size()) throw ArgumentError("malformed signature: " + text);
            } catch (const std::logic_error&) {
                throw ArgumentError("malformed signature: " + text);
            }
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return Signature(std::move(parts));
}

}  // namespace vertexlab
