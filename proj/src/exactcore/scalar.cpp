#include "vertexlab/scalar.hpp"

#include "vertexlab/errors.hpp"

#include <cctype>

namespace vertexlab {

ExactScalar rational(long n, long d) {
    if (d == 0) throw DivisionByZero("zero denominator");
    ExactScalar out(n, d);
    out.canonicalize();
    return out;
}

ExactScalar parse_scalar(const std::string& raw) {
    std::string text;
    for (char c : raw) {
        if (!std::isspace(static_cast<unsigned char>(c))) text.push_back(c);
    }
    if (text.empty()) throw ArgumentError("empty rational literal");

    auto dot = text.find('.');
    if (dot != std::string::npos) {
        if (text.find('/') != std::string::npos) throw ArgumentError("malformed rational: " + raw);
        std::string digits = text.substr(0, dot) + text.substr(dot + 1);
        std::size_t scale = text.size() - dot - 1;
        mpz_class num;
        if (digits.empty() || digits == "-" || digits == "+" || num.set_str(digits, 10) != 0) {
            throw ArgumentError("malformed rational: " + raw);
        }
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, scale);
        ExactScalar out(num, den);
        out.canonicalize();
        return out;
    }

    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        bool ok = std::isdigit(static_cast<unsigned char>(c)) || c == '/' ||
                  ((c == '-' || c == '+') && (i == 0 || text[i - 1] == '/'));
        if (!ok) throw ArgumentError("malformed rational: " + raw);
    }
    auto slash = text.find('/');
    mpz_class num, den(1);
    std::string num_text = text.substr(0, slash);
    if (num_text.size() > 1 && num_text[0] == '+') num_text.erase(0, 1);
    if (num.set_str(num_text, 10) != 0) throw ArgumentError("malformed rational: " + raw);
    if (slash != std::string::npos) {
        if (den.set_str(text.substr(slash + 1), 10) != 0) throw ArgumentError("malformed rational: " + raw);
        if (den == 0) throw DivisionByZero("zero denominator in " + raw);
    }
    ExactScalar out(num, den);
    out.canonicalize();
    return out;
}

std::string to_string(const ExactScalar& x) {
    if (x.get_den() == 1) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

ExactScalar pow(const ExactScalar& base, long exponent) {
    if (exponent < 0) {
        if (base == 0) throw DivisionByZero("negative power of zero");
        ExactScalar inv = 1 / base;
        return pow(inv, -exponent);
    }
    unsigned long e = static_cast<unsigned long>(exponent);
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), e);
    mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), e);
    ExactScalar out(num, den);
    out.canonicalize();
    return out;
}

ExactScalar abs(const ExactScalar& x) { return x < 0 ? ExactScalar(-x) : x; }

double to_double(const ExactScalar& x) { return x.get_d(); }

std::vector<ExactScalar> parse_scalar_list(const std::string& text) {
    std::vector<ExactScalar> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto comma = text.find(',', start);
        std::string piece = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (!piece.empty()) out.push_back(parse_scalar(piece));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

}  // namespace vertexlab
