#pragma once

#include <map>
#include <string>
#include <vector>

namespace vertexlab {

// Nonincreasing tuple of nonnegative integers; also a multiset of particle positions.
class Signature {
public:
    Signature() = default;
    explicit Signature(std::vector<int> parts);  // sorts descending, rejects negatives

    static Signature from_multiplicities(const std::map<int, int>& counts);

    const std::vector<int>& parts() const { return parts_; }
    int length() const { return static_cast<int>(parts_.size()); }
    int operator[](int i) const { return parts_[static_cast<std::size_t>(i)]; }
    bool empty() const { return parts_.empty(); }
    int largest() const { return parts_.empty() ? 0 : parts_.front(); }
    int smallest() const { return parts_.empty() ? 0 : parts_.back(); }
    long size() const;  // |nu|

    // n_k for each k with n_k > 0.
    std::map<int, int> multiplicities() const;
    int multiplicity(int k) const;

    // Adds r to every part (r may be negative if the result stays nonnegative).
    Signature shifted(int r) const;

    std::string str() const;

    friend bool operator==(const Signature&, const Signature&) = default;
    friend auto operator<=>(const Signature& a, const Signature& b) { return a.parts_ <=> b.parts_; }

private:
    std::vector<int> parts_;
};

// All signatures of the given length with parts in [lo, hi].
std::vector<Signature> enumerate_signatures(int length, int lo, int hi);

// Parses "3,2,2" or "" for the empty signature.
Signature parse_signature(const std::string& text);

}  // namespace vertexlab
