#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "xsat/formula.hpp"

namespace xsat {

enum class Method { gauss, subst };

inline const char* to_string(Method m) { return m == Method::gauss ? "gauss" : "subst"; }

inline Method parse_method(const std::string& s) {
    if (s == "gauss") return Method::gauss;
    if (s == "subst") return Method::subst;
    throw Error(ErrorKind::contract, "unknown method '" + s + "' (expected gauss|subst)");
}

struct PhaseTimes {
    double encode_us = 0;
    double eliminate_us = 0;
    double enumerate_us = 0;
};

struct SolveReport {
    bool sat = false;
    mpz_class count = 0;
    std::size_t rank = 0;
    std::size_t nullity = 0;
    std::size_t kernel_vars = 0;
    std::size_t kernel_clauses = 0;
    double repr_size_bits = 0; // base-2 logarithm
    Method method = Method::gauss;
    std::uint64_t elapsed_ms = 0;

    PhaseTimes phases;
    std::vector<Assignment> witnesses;
    bool witnesses_truncated = false;
};

} // namespace xsat
