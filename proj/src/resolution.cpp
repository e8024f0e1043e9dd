#include "torusbundle/resolution.hpp"

#include <functional>
#include <sstream>
#include <vector>

namespace torusbundle {

namespace {

GroupRingElement one() { return GroupRingElement::one(); }
GroupRingElement gen_a(Int e = 1) { return GroupRingElement::term({e, 0, 0}); }
GroupRingElement gen_b(Int e = 1) { return GroupRingElement::term({0, e, 0}); }
GroupRingElement gen_t() { return GroupRingElement::term({0, 0, 1}); }

struct Quad {
    Int m1, n1, m2, n2;
};

struct TableRow {
    std::function<bool(const Quad&)> matches;
    std::function<IndexSets(const Quad&)> sets;
};

Interval iv(Int lo, Int hi) { return {lo, hi}; }

// Sign predicates.  "pos"/"neg" are strict; the value rows pin exact values.
const std::vector<TableRow>& table() {
    static const std::vector<TableRow> rows = [] {
        std::vector<TableRow> r;
        auto pos = [](Int v) { return v > 0; };
        auto neg = [](Int v) { return v < 0; };

        // 1: all positive, m1 < m2, n1 < n2
        r.push_back({[=](const Quad& q) {
                         return pos(q.m1) && pos(q.n1) && pos(q.m2) && pos(q.n2) &&
                                q.m1 < q.m2 && q.n1 < q.n2;
                     },
                     [](const Quad& q) {
                         return IndexSets{iv(-q.m1 - q.m2, -q.m2 - 1), iv(-q.n2, -q.n1 - 1),
                                          iv(-q.m2, -q.m1 - 1), iv(-q.n1, -1)};
                     }});
        // 2: all positive, m1 > m2, n1 > n2
        r.push_back({[=](const Quad& q) {
                         return pos(q.m1) && pos(q.n1) && pos(q.m2) && pos(q.n2) &&
                                q.m1 > q.m2 && q.n1 > q.n2;
                     },
                     [](const Quad& q) {
                         return IndexSets{iv(-q.m1, -q.m2 - 1), iv(-q.n2, -1),
                                          iv(-q.m1 - q.m2, -q.m1 - 1), iv(-q.n1, -q.n2 - 1)};
                     }});
        // 3: all negative, m1 > m2, n1 > n2
        r.push_back({[=](const Quad& q) {
                         return neg(q.m1) && neg(q.n1) && neg(q.m2) && neg(q.n2) &&
                                q.m1 > q.m2 && q.n1 > q.n2;
                     },
                     [](const Quad& q) {
                         return IndexSets{iv(-q.m2, -q.m1 - q.m2 - 1), iv(-q.n1, -q.n2 - 1),
                                          iv(-q.m1, -q.m2 - 1), iv(0, -q.n1 - 1)};
                     }});
        // 4: all negative, m1 < m2, n1 < n2
        r.push_back({[=](const Quad& q) {
                         return neg(q.m1) && neg(q.n1) && neg(q.m2) && neg(q.n2) &&
                                q.m1 < q.m2 && q.n1 < q.n2;
                     },
                     [](const Quad& q) {
                         return IndexSets{iv(-q.m2, -q.m1 - 1), iv(0, -q.n2 - 1),
                                          iv(-q.m1, -q.m1 - q.m2 - 1), iv(-q.n2, -q.n1 - 1)};
                     }});
        // 5: (-, +, +, -)
        r.push_back({[=](const Quad& q) {
                         return neg(q.m1) && pos(q.n1) && pos(q.m2) && neg(q.n2);
                     },
                     [](const Quad& q) {
                         return IndexSets{iv(-q.m2, -q.m1 - q.m2 - 1), iv(0, -q.n2 - 1),
                                          iv(-q.m1 - q.m2, -q.m1 - 1), iv(-q.n1, -1)};
                     }});
        // 6: (+, -, -, +)
        r.push_back({[=](const Quad& q) {
                         return pos(q.m1) && neg(q.n1) && neg(q.m2) && pos(q.n2);
                     },
                     [](const Quad& q) {
                         return IndexSets{iv(-q.m1 - q.m2, -q.m2 - 1), iv(-q.n2, -1),
                                          iv(-q.m1, -q.m1 - q.m2 - 1), iv(0, -q.n1 - 1)};
                     }});
        // 7: (+, -, +, -), m1 < m2, n1 > n2
        r.push_back({[=](const Quad& q) {
                         return pos(q.m1) && neg(q.n1) && pos(q.m2) && neg(q.n2) &&
                                q.m1 < q.m2 && q.n1 > q.n2;
                     },
                     [](const Quad& q) {
                         return IndexSets{iv(-q.m2, -q.m1 - 1), iv(0, -q.n1 - 1),
                                          iv(-q.m1 - q.m2, -q.m2 - 1), iv(-q.n1, -q.n2 - 1)};
                     }});
        // 8: (+, -, +, -), m1 > m2, n1 < n2
        r.push_back({[=](const Quad& q) {
                         return pos(q.m1) && neg(q.n1) && pos(q.m2) && neg(q.n2) &&
                                q.m1 > q.m2 && q.n1 < q.n2;
                     },
                     [](const Quad& q) {
                         return IndexSets{iv(-q.m1 - q.m2, -q.m1 - 1), iv(-q.n2, -q.n1 - 1),
                                          iv(-q.m1, -q.m2 - 1), iv(0, -q.n2 - 1)};
                     }});
        // 9: (-, +, -, +), m1 < m2, n1 > n2
        r.push_back({[=](const Quad& q) {
                         return neg(q.m1) && pos(q.n1) && neg(q.m2) && pos(q.n2) &&
                                q.m1 < q.m2 && q.n1 > q.n2;
                     },
                     [](const Quad& q) {
                         return IndexSets{iv(-q.m1, -q.m1 - q.m2 - 1), iv(-q.n1, -q.n2 - 1),
                                          iv(-q.m2, -q.m1 - 1), iv(-q.n2, -1)};
                     }});
        // 10: (-, +, -, +), m1 > m2, n1 < n2
        r.push_back({[=](const Quad& q) {
                         return neg(q.m1) && pos(q.n1) && neg(q.m2) && pos(q.n2) &&
                                q.m1 > q.m2 && q.n1 < q.n2;
                     },
                     [](const Quad& q) {
                         return IndexSets{iv(-q.m1, -q.m2 - 1), iv(-q.n1, -1),
                                          iv(-q.m2, -q.m1 - q.m2 - 1), iv(-q.n2, -q.n1 - 1)};
                     }});
        // 11: (+, +, -, -)
        r.push_back({[=](const Quad& q) {
                         return pos(q.m1) && pos(q.n1) && neg(q.m2) && neg(q.n2);
                     },
                     [](const Quad& q) {
                         return IndexSets{iv(-q.m1, -q.m1 - q.m2 - 1), iv(-q.n1, -1),
                                          iv(-q.m1 - q.m2, -q.m2 - 1), iv(0, -q.n2 - 1)};
                     }});
        // 12: (-, -, +, +)
        r.push_back({[=](const Quad& q) {
                         return neg(q.m1) && neg(q.n1) && pos(q.m2) && pos(q.n2);
                     },
                     [](const Quad& q) {
                         return IndexSets{iv(-q.m1 - q.m2, -q.m1 - 1), iv(0, -q.n1 - 1),
                                          iv(-q.m2, -q.m1 - q.m2 - 1), iv(-q.n2, -1)};
                     }});
        // 13..16: m1 = 0 (n1 and m2 are forced to +-1 then)
        r.push_back({[](const Quad& q) { return q.m1 == 0 && q.n1 == 1 && q.m2 == 1; },
                     [](const Quad&) {
                         return IndexSets{Interval::empty(), Interval::empty(),
                                          Interval::single(-1), Interval::single(-1)};
                     }});
        r.push_back({[](const Quad& q) { return q.m1 == 0 && q.n1 == -1 && q.m2 == -1; },
                     [](const Quad&) {
                         return IndexSets{Interval::empty(), Interval::empty(),
                                          Interval::single(0), Interval::single(0)};
                     }});
        r.push_back({[](const Quad& q) { return q.m1 == 0 && q.n1 == 1 && q.m2 == -1; },
                     [](const Quad&) {
                         return IndexSets{Interval::single(0), Interval::single(-1),
                                          Interval::empty(), Interval::empty()};
                     }});
        r.push_back({[](const Quad& q) { return q.m1 == 0 && q.n1 == -1 && q.m2 == 1; },
                     [](const Quad&) {
                         return IndexSets{Interval::single(-1), Interval::single(0),
                                          Interval::empty(), Interval::empty()};
                     }});
        // 17..20: n1 = 0 (m1, n2 forced to +-1)
        r.push_back({[](const Quad& q) { return q.m1 == 1 && q.n1 == 0 && q.n2 == 1; },
                     [](const Quad& q) {
                         return IndexSets{Interval::single(-q.m2 - 1), Interval::single(-1),
                                          Interval::empty(), Interval::empty()};
                     }});
        r.push_back({[](const Quad& q) { return q.m1 == -1 && q.n1 == 0 && q.n2 == -1; },
                     [](const Quad& q) {
                         return IndexSets{Interval::single(-q.m2), Interval::single(0),
                                          Interval::empty(), Interval::empty()};
                     }});
        r.push_back({[](const Quad& q) { return q.m1 == 1 && q.n1 == 0 && q.n2 == -1; },
                     [](const Quad& q) {
                         return IndexSets{Interval::empty(), Interval::empty(),
                                          Interval::single(-q.m2 - 1), Interval::single(0)};
                     }});
        r.push_back({[](const Quad& q) { return q.m1 == -1 && q.n1 == 0 && q.n2 == 1; },
                     [](const Quad& q) {
                         return IndexSets{Interval::empty(), Interval::empty(),
                                          Interval::single(-q.m2), Interval::single(-1)};
                     }});
        // 21..24: m2 = 0
        r.push_back({[](const Quad& q) { return q.m1 == 1 && q.m2 == 0 && q.n2 == 1; },
                     [](const Quad&) {
                         return IndexSets{Interval::single(-1), Interval::single(-1),
                                          Interval::empty(), Interval::empty()};
                     }});
        r.push_back({[](const Quad& q) { return q.m1 == -1 && q.m2 == 0 && q.n2 == -1; },
                     [](const Quad&) {
                         return IndexSets{Interval::single(0), Interval::single(0),
                                          Interval::empty(), Interval::empty()};
                     }});
        r.push_back({[](const Quad& q) { return q.m1 == 1 && q.m2 == 0 && q.n2 == -1; },
                     [](const Quad&) {
                         return IndexSets{Interval::empty(), Interval::empty(),
                                          Interval::single(-1), Interval::single(0)};
                     }});
        r.push_back({[](const Quad& q) { return q.m1 == -1 && q.m2 == 0 && q.n2 == 1; },
                     [](const Quad&) {
                         return IndexSets{Interval::empty(), Interval::empty(),
                                          Interval::single(0), Interval::single(-1)};
                     }});
        // 25..28: n2 = 0
        r.push_back({[](const Quad& q) { return q.n1 == 1 && q.m2 == 1 && q.n2 == 0; },
                     [](const Quad& q) {
                         return IndexSets{Interval::empty(), Interval::empty(),
                                          Interval::single(-q.m1 - 1), Interval::single(-1)};
                     }});
        r.push_back({[](const Quad& q) { return q.n1 == -1 && q.m2 == -1 && q.n2 == 0; },
                     [](const Quad& q) {
                         return IndexSets{Interval::empty(), Interval::empty(),
                                          Interval::single(-q.m1), Interval::single(0)};
                     }});
        r.push_back({[](const Quad& q) { return q.n1 == 1 && q.m2 == -1 && q.n2 == 0; },
                     [](const Quad& q) {
                         return IndexSets{Interval::single(-q.m1), Interval::single(-1),
                                          Interval::empty(), Interval::empty()};
                     }});
        r.push_back({[](const Quad& q) { return q.n1 == -1 && q.m2 == 1 && q.n2 == 0; },
                     [](const Quad& q) {
                         return IndexSets{Interval::single(-q.m1 - 1), Interval::single(0),
                                          Interval::empty(), Interval::empty()};
                     }});
        return r;
    }();
    return rows;
}

}  // namespace

int index_table_row_count() { return static_cast<int>(table().size()); }

IndexSetLookup lookup_index_sets(const GluingMatrix& theta) {
    Quad q{theta.m1(), theta.n1(), theta.m2(), theta.n2()};
    const auto& rows = table();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!rows[i].matches(q)) continue;
        IndexSetLookup result{rows[i].sets(q), static_cast<int>(i + 1)};
        if (result.sets.cardinality_difference() != theta.det()) {
            std::ostringstream os;
            os << "index-set row " << result.row << " violates the cardinality identity for theta "
               << theta.to_string();
            throw EVerificationError(os.str());
        }
        return result;
    }
    std::ostringstream os;
    os << "no index-set row matches (m1,n1,m2,n2) = (" << q.m1 << "," << q.n1 << "," << q.m2 << ","
       << q.n2 << ")";
    throw NoMatchingRowError(os.str());
}

AbcdElements build_abcd(const GluingMatrix& theta) {
    const Int alpha = theta.alpha(), beta = theta.beta(), gamma = theta.gamma(),
              delta = theta.delta();
    const Int m1 = theta.m1(), n1 = theta.n1(), m2 = theta.m2(), n2 = theta.n2();
    AbcdElements r;

    r.A = one();
    if (m1 > 0) {
        for (Int k = 1; k <= m1; ++k)
            r.A.add_term({checked_mul(-k, alpha), checked_mul(-k, beta), 1}, 1);
    } else if (m1 < 0) {
        for (Int k = 0; k <= -m1 - 1; ++k)
            r.A.add_term({checked_mul(k, alpha), checked_mul(k, beta), 1}, -1);
    }

    if (n1 > 0) {
        for (Int k = 0; k <= n1 - 1; ++k)
            r.B.add_term({checked_add(1, checked_mul(k, gamma)), checked_mul(k, delta), 1}, 1);
    } else if (n1 < 0) {
        for (Int k = 1; k <= -n1; ++k)
            r.B.add_term({checked_sub(1, checked_mul(k, gamma)), checked_mul(-k, delta), 1}, -1);
    }

    if (m2 > 0) {
        for (Int k = 1; k <= m2; ++k)
            r.C.add_term({checked_mul(-k, alpha), checked_mul(-k, beta), 1}, 1);
    } else if (m2 < 0) {
        for (Int k = 0; k <= -m2 - 1; ++k)
            r.C.add_term({checked_mul(k, alpha), checked_mul(k, beta), 1}, -1);
    }

    r.D = one();
    if (n2 > 0) {
        for (Int k = 0; k <= n2 - 1; ++k)
            r.D.add_term({checked_mul(k, gamma), checked_add(1, checked_mul(k, delta)), 1}, 1);
    } else if (n2 < 0) {
        for (Int k = 1; k <= -n2; ++k)
            r.D.add_term({checked_mul(-k, gamma), checked_sub(1, checked_mul(k, delta)), 1}, -1);
    }
    return r;
}

bool satisfies_e_identity(const GluingMatrix& theta, const GroupRingElement& e) {
    const AbcdElements abcd = build_abcd(theta);
    const GroupRingElement a_minus_1 = gen_a() - one();
    const GroupRingElement b_minus_1 = gen_b() - one();
    const GroupRingElement lhs1 = ring_mul(theta, e, -b_minus_1);
    const GroupRingElement rhs1 =
        ring_mul(theta, b_minus_1, abcd.A) + ring_mul(theta, -a_minus_1, abcd.C);
    if (lhs1 != rhs1) return false;
    const GroupRingElement lhs2 = ring_mul(theta, e, a_minus_1);
    const GroupRingElement rhs2 =
        ring_mul(theta, b_minus_1, abcd.B) + ring_mul(theta, -a_minus_1, abcd.D);
    return lhs2 == rhs2;
}

GroupRingElement assemble_e(const GluingMatrix& theta, const IndexSets& sets) {
    GroupRingElement e = -one();
    auto add_box = [&](const Interval& I, const Interval& J, Int sign) {
        if (I.is_empty() || J.is_empty()) return;
        for (Int m = I.lo; m <= I.hi; ++m)
            for (Int n = J.lo; n <= J.hi; ++n) {
                Int ea = checked_add(checked_mul(theta.alpha(), m), checked_mul(theta.gamma(), n));
                Int eb = checked_add(checked_mul(theta.beta(), m), checked_mul(theta.delta(), n));
                e.add_term({ea, eb, 1}, sign);
            }
    };
    add_box(sets.I1, sets.J1, 1);
    add_box(sets.I2, sets.J2, -1);
    return e;
}

LatticeLabels solve_e_labels(const GluingMatrix& theta) {
    const AbcdElements abcd = build_abcd(theta);
    const GroupRingElement a_minus_1 = gen_a() - one();
    const GroupRingElement b_minus_1 = gen_b() - one();

    // Right-hand sides of the two difference equations for the labels h:
    //   h(m,n) - h(m-gamma, n-delta)  = rhs1 coefficient at (m,n)
    //   h(m-alpha, n-beta) - h(m,n)   = rhs2 coefficient at (m,n)
    const GroupRingElement rhs1 =
        ring_mul(theta, b_minus_1, abcd.A - one()) + ring_mul(theta, -a_minus_1, abcd.C);
    const GroupRingElement rhs2 =
        ring_mul(theta, b_minus_1, abcd.B) + ring_mul(theta, -a_minus_1, abcd.D - one());

    // Transform to coordinates where the steps are axis-aligned: (u,v) =
    // theta^-1 (m,n) turns the gamma/delta step into a unit step in v and
    // the alpha/beta step into a unit step in u.
    std::map<Int, std::map<Int, Int>> columns;  // u -> (v -> rhs1 coefficient)
    for (const auto& [g, c] : rhs1.terms()) {
        if (g.k != 1) throw UnsolvableSystemError("unexpected t-level in difference equation");
        auto [u, v] = theta.inverse_apply({g.m, g.n});
        columns[u][v] = checked_add(columns[u][v], c);
    }

    // Integrate each column from below.  A finitely supported solution needs
    // every column to sum to zero; prefix sums give its unique values.
    LatticeLabels labels;
    for (const auto& [u, col] : columns) {
        Int running = 0;
        if (col.empty()) continue;
        Int vmin = col.begin()->first;
        Int vmax = col.rbegin()->first;
        for (Int v = vmin; v <= vmax; ++v) {
            auto it = col.find(v);
            if (it != col.end()) running = checked_add(running, it->second);
            if (running != 0) labels[{u, v}] = running;
        }
        if (running != 0)
            throw UnsolvableSystemError("column of the difference equation does not telescope");
    }

    // Cross-check the horizontal equation on the whole support.
    std::map<std::pair<Int, Int>, Int> horizontal;
    for (const auto& [g, c] : rhs2.terms()) {
        auto [u, v] = theta.inverse_apply({g.m, g.n});
        horizontal[{u, v}] = c;
    }
    auto label_at = [&](Int u, Int v) -> Int {
        auto it = labels.find({u, v});
        return it == labels.end() ? 0 : it->second;
    };
    std::map<std::pair<Int, Int>, Int> expected;
    for (const auto& [uv, c] : labels) {
        (void)c;
        for (Int du = 0; du <= 1; ++du) {
            Int u = uv.first + du, v = uv.second;
            Int diff = checked_sub(label_at(u - 1, v), label_at(u, v));
            if (diff != 0) expected[{u, v}] = diff;
        }
    }
    if (expected != horizontal)
        throw UnsolvableSystemError("lattice labels do not satisfy the horizontal equation");

    return labels;
}

GroupRingElement solve_e_lattice(const GluingMatrix& theta) {
    LatticeLabels labels = solve_e_labels(theta);
    GroupRingElement e = -one();
    for (const auto& [uv, c] : labels) {
        auto [u, v] = uv;
        Int ea = checked_add(checked_mul(theta.alpha(), u), checked_mul(theta.gamma(), v));
        Int eb = checked_add(checked_mul(theta.beta(), u), checked_mul(theta.delta(), v));
        e.add_term({ea, eb, 1}, c);
    }
    if (!satisfies_e_identity(theta, e))
        throw UnsolvableSystemError("lattice-solved E fails its defining identity");
    return e;
}

BuildEResult build_e(const GluingMatrix& theta) {
    BuildEResult result;
    try {
        IndexSetLookup lookup = lookup_index_sets(theta);
        result.e = assemble_e(theta, lookup.sets);
        if (!satisfies_e_identity(theta, result.e)) {
            std::ostringstream os;
            os << "table row " << lookup.row << " built an E that fails the defining identity for "
               << theta.to_string();
            throw EVerificationError(os.str());
        }
        result.lookup = lookup;
    } catch (const NoMatchingRowError&) {
        result.e = solve_e_lattice(theta);
        result.used_lattice_fallback = true;
    }
    return result;
}

Resolution::Resolution(const GluingMatrix& theta) : theta_(theta) {}

Resolution Resolution::build(const GluingMatrix& theta) {
    Resolution res(theta);
    res.abcd_ = build_abcd(theta);
    BuildEResult e = build_e(theta);
    res.e_ = e.e;
    res.e_fallback_ = e.used_lattice_fallback;
    res.lookup_ = e.lookup;

    const GroupRingElement a_minus_1 = gen_a() - one();
    const GroupRingElement b_minus_1 = gen_b() - one();
    const GroupRingElement t_minus_1 = gen_t() - one();

    res.d1_ = {a_minus_1, b_minus_1, t_minus_1};
    res.d2_[0] = {res.abcd_.A, res.abcd_.B, a_minus_1};
    res.d2_[1] = {res.abcd_.C, res.abcd_.D, b_minus_1};
    res.d2_[2] = {-b_minus_1, a_minus_1, GroupRingElement::zero()};
    res.d3_ = {-b_minus_1, a_minus_1, res.e_};

    res.verify();
    return res;
}

void Resolution::verify() const {
    for (int j = 0; j < 3; ++j)
        if (augmentation(d1_[j]) != 0)
            throw ChainComplexError("augmentation of a first differential entry is nonzero");
    for (int i = 0; i < 3; ++i) {
        GroupRingElement acc;
        for (int j = 0; j < 3; ++j) acc = acc + ring_mul(theta_, d2_[i][j], d1_[j]);
        if (!acc.is_zero()) throw ChainComplexError("d1 after d2 is nonzero");
    }
    for (int j = 0; j < 3; ++j) {
        GroupRingElement acc;
        for (int i = 0; i < 3; ++i) acc = acc + ring_mul(theta_, d3_[i], d2_[i][j]);
        if (!acc.is_zero()) throw ChainComplexError("d2 after d3 is nonzero");
    }
}

}  // namespace torusbundle
