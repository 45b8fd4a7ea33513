#include "frs/qsystem.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace frs {

const LaurentPoly& QSystemTable::entry(int a, int j) {
    if (a < 1 || a > g_.rank || j < 0)
        throw std::invalid_argument("QSystemTable::entry: bad index");
    auto key = std::pair{a, j};
    auto it = table_.find(key);
    if (it != table_.end()) return it->second;
    if (!in_progress_.insert(key).second)
        throw std::logic_error("QSystemTable: cyclic dependency at Q_{" + std::to_string(a) +
                               "," + std::to_string(j) + "}");

    LaurentPoly value;
    if (j == 0) {
        value = LaurentPoly::one();
    } else if (j == 1) {
        value = LaurentPoly::variable(var_t(a));
    } else {
        LaurentPoly rhs = entry(a, j - 1) * entry(a, j - 1);
        LaurentPoly prod = LaurentPoly::one();
        for (int b : g_.neighbors(a)) prod = prod * t_term(a, b, j - 1);
        rhs -= prod;
        if (!exact_divide(rhs, entry(a, j - 2), value))
            throw std::logic_error("QSystemTable: inexact division at Q_{" + std::to_string(a) +
                                   "," + std::to_string(j) + "}");
    }
    in_progress_.erase(key);
    return table_.emplace(key, std::move(value)).first->second;
}

LaurentPoly QSystemTable::t_term(int a, int b, int j) {
    if (!g_.adjacent(a, b)) throw std::invalid_argument("t_term: not an edge");
    int cab = std::abs(g_.C(a, b));
    int cba = std::abs(g_.C(b, a));
    LaurentPoly out = LaurentPoly::one();
    for (int c = 0; c < cab; ++c) out = out * entry(b, (cba * j + c) / cab);
    return out;
}

LaurentPoly QSystemTable::t_term_explicit(int a, int b, int j) {
    if (!g_.adjacent(a, b)) throw std::invalid_argument("t_term_explicit: not an edge");
    if (g_.t_of(a) == g_.t_of(b)) return entry(b, j);

    // One catalog per family, written out for both orientations of the
    // multiple edge.
    switch (g_.family) {
        case Family::B: {
            const int r = g_.rank;
            if (a == r - 1 && b == r) return entry(r, 2 * j);
            if (a == r && b == r - 1) return entry(r - 1, j / 2) * entry(r - 1, (j + 1) / 2);
            break;
        }
        case Family::C: {
            const int r = g_.rank;
            if (a == r && b == r - 1) return entry(r - 1, 2 * j);
            if (a == r - 1 && b == r) return entry(r, j / 2) * entry(r, (j + 1) / 2);
            break;
        }
        case Family::F: {
            if (a == 2 && b == 3) return entry(3, 2 * j);
            if (a == 3 && b == 2) return entry(2, j / 2) * entry(2, (j + 1) / 2);
            break;
        }
        case Family::G: {
            if (a == 1 && b == 2) return entry(2, 3 * j);
            if (a == 2 && b == 1)
                return entry(1, j / 3) * entry(1, (j + 1) / 3) * entry(1, (j + 2) / 3);
            break;
        }
        default:
            break;
    }
    throw std::invalid_argument("t_term_explicit: no catalog entry for this edge");
}

void QSystemTable::ensure_scaled_level(int level) {
    for (int a = 1; a <= g_.rank; ++a)
        for (int j = 0; j <= g_.t_of(a) * level; ++j) entry(a, j);
}

QSystemTable solve_q_system(const AlgebraSpec& g, int scaled_level) {
    QSystemTable table(g);
    table.ensure_scaled_level(scaled_level);
    return table;
}

LaurentPoly rank1_three_term(int j) {
    LaurentPoly prev = LaurentPoly::one();                 // P_0
    LaurentPoly cur = LaurentPoly::variable(var_t(1));     // P_1
    if (j == 0) return prev;
    for (int i = 1; i < j; ++i) {
        LaurentPoly next = LaurentPoly::variable(var_t(1)) * cur - prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

bool chebyshev_check(int depth) {
    QSystemTable table(build_algebra("A1"));
    for (int j = 0; j <= depth; ++j)
        if (table.entry(1, j) != rank1_three_term(j)) return false;
    return true;
}

}  // namespace frs
