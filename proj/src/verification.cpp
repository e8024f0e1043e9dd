#include "torusbundle/verification.hpp"

#include <atomic>
#include <sstream>
#include <thread>

namespace torusbundle {

namespace {

/// Minimal xorshift-based generator: the standard library engines have
/// implementation-defined distributions, and verify output must be byte
/// identical for a fixed seed everywhere.
struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed) : state(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

    std::uint64_t next() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    }
    /// Uniform-ish integer in [lo, hi].
    Int range(Int lo, Int hi) {
        return lo + static_cast<Int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }
};

}  // namespace

std::vector<GluingMatrix> sample_gluing_matrices(std::uint64_t seed, int count, Int bound) {
    Rng rng(seed);
    std::vector<GluingMatrix> out;
    out.reserve(count);
    while (static_cast<int>(out.size()) < count) {
        Int a = rng.range(-bound, bound);
        Int g = rng.range(-bound, bound);
        Int b = rng.range(-bound, bound);
        Int d = rng.range(-bound, bound);
        Int det = a * d - b * g;
        if (det != 1 && det != -1) continue;
        out.emplace_back(a, g, b, d);
    }
    return out;
}

const std::vector<GluingMatrix>& six_case_corpus() {
    static const std::vector<GluingMatrix> corpus = {
        GluingMatrix(1, 0, 0, 1), GluingMatrix(1, 0, 1, 1),  GluingMatrix(0, 1, 1, 0),
        GluingMatrix(1, 2, 0, -1), GluingMatrix(2, 1, 1, 1), GluingMatrix(2, 1, 1, 0)};
    return corpus;
}

const std::vector<TableCorpusEntry>& table_coverage_corpus() {
    // One quadruple (m1, n1, m2, n2) per table row; theta is recovered from
    // [[m1, m2], [n1, n2]] = -theta^-1 by inverting the relation.
    static const std::vector<TableCorpusEntry> corpus = [] {
        struct QuadRow {
            Int m1, n1, m2, n2;
            int row;
        };
        const std::vector<QuadRow> quads = {
            {1, 1, 2, 3, 1},     {2, 3, 1, 1, 2},     {-1, -1, -2, -3, 3}, {-3, -2, -1, -1, 4},
            {-2, 1, 1, -1, 5},   {2, -1, -1, 1, 6},   {1, -1, 2, -3, 7},   {2, -3, 1, -1, 8},
            {-2, 3, -1, 1, 9},   {-1, 1, -2, 3, 10},  {1, 1, -1, -2, 11},  {-1, -1, 1, 2, 12},
            {0, 1, 1, 5, 13},    {0, -1, -1, 2, 14},  {0, 1, -1, -3, 15},  {0, -1, 1, 4, 16},
            {1, 0, 3, 1, 17},    {-1, 0, 2, -1, 18},  {1, 0, -2, -1, 19},  {-1, 0, 4, 1, 20},
            {1, 2, 0, 1, 21},    {-1, 3, 0, -1, 22},  {1, -2, 0, -1, 23},  {-1, 5, 0, 1, 24},
            {3, 1, 1, 0, 25},    {-2, -1, -1, 0, 26}, {2, 1, -1, 0, 27},   {-3, -1, 1, 0, 28},
        };
        std::vector<TableCorpusEntry> out;
        for (const auto& q : quads) {
            Int dm = q.m1 * q.n2 - q.m2 * q.n1;  // +-1 by construction
            // theta = -[[m1, m2], [n1, n2]]^-1
            Int a = (-q.n2) * dm;
            Int g = q.m2 * dm;
            Int b = q.n1 * dm;
            Int d = (-q.m1) * dm;
            out.push_back({GluingMatrix(a, g, b, d), q.row});
        }
        return out;
    }();
    return corpus;
}

namespace {

struct Suite {
    SuiteTally tally;

    explicit Suite(std::string name) { tally.name = std::move(name); }

    void record(bool pass, const std::string& what) {
        ++tally.total;
        if (pass) {
            ++tally.passed;
        } else if (tally.failures.size() < 5) {
            tally.failures.push_back(what);
        }
    }
};

GroupRingElement random_element(Rng& rng, int max_terms) {
    GroupRingElement x;
    int terms = static_cast<int>(rng.range(0, max_terms));
    for (int i = 0; i < terms; ++i) {
        GroupElement g{rng.range(-3, 3), rng.range(-3, 3), rng.range(-2, 2)};
        Int c = rng.range(-3, 3);
        x.add_term(g, c);
    }
    return x;
}

void run_group_ring_suites(std::uint64_t seed, std::vector<SuiteTally>& out) {
    Rng rng(seed ^ 0xa5a5a5a5ULL);
    std::vector<GluingMatrix> thetas = sample_gluing_matrices(seed ^ 0x1234ULL, 8, 5);

    Suite assoc("ring_associativity");
    for (int i = 0; i < 200; ++i) {
        const GluingMatrix& t = thetas[i % thetas.size()];
        GroupRingElement x = random_element(rng, 4);
        GroupRingElement y = random_element(rng, 4);
        GroupRingElement z = random_element(rng, 4);
        bool ok = ring_mul(t, ring_mul(t, x, y), z) == ring_mul(t, x, ring_mul(t, y, z));
        assoc.record(ok, "associativity failed for theta " + t.to_string());
    }
    out.push_back(assoc.tally);

    Suite aug("augmentation_ring_map");
    for (int i = 0; i < 200; ++i) {
        const GluingMatrix& t = thetas[i % thetas.size()];
        GroupRingElement x = random_element(rng, 4);
        GroupRingElement y = random_element(rng, 4);
        bool ok = augmentation(ring_mul(t, x, y)) ==
                      checked_mul(augmentation(x), augmentation(y)) &&
                  augmentation(x + y) == checked_add(augmentation(x), augmentation(y));
        aug.record(ok, "augmentation not a ring map for theta " + t.to_string());
    }
    out.push_back(aug.tally);

    Suite inv("group_inverse_law");
    for (int i = 0; i < 200; ++i) {
        const GluingMatrix& t = thetas[i % thetas.size()];
        GroupElement g{rng.range(-6, 6), rng.range(-6, 6), rng.range(-4, 4)};
        GroupElement id{0, 0, 0};
        bool ok = mul_elements(t, g, inverse_element(t, g)) == id &&
                  mul_elements(t, inverse_element(t, g), g) == id;
        inv.record(ok, "inverse law failed for theta " + t.to_string());
    }
    out.push_back(inv.tally);

    Suite fox("fox_telescoping");
    for (int e = -20; e <= 20; ++e) {
        for (Axis axis : {Axis::A, Axis::B}) {
            GroupElement unit = axis == Axis::A ? GroupElement{1, 0, 0} : GroupElement{0, 1, 0};
            GroupElement power = axis == Axis::A ? GroupElement{e, 0, 0} : GroupElement{0, e, 0};
            GroupRingElement step = GroupRingElement::term(unit) - GroupRingElement::one();
            GroupRingElement target = GroupRingElement::term(power) - GroupRingElement::one();
            const GluingMatrix& t = thetas[static_cast<std::size_t>(e + 20) % thetas.size()];
            GroupRingElement d = fox_power(e, axis);
            bool ok = ring_mul(t, d, step) == target && augmentation(d) == e;
            fox.record(ok, "telescoping failed at exponent " + std::to_string(e));
        }
    }
    out.push_back(fox.tally);
}

void run_corpus_suites(std::vector<SuiteTally>& out) {
    Suite rows("index_table_coverage");
    for (const auto& entry : table_coverage_corpus()) {
        bool ok = false;
        std::string what;
        try {
            IndexSetLookup lookup = lookup_index_sets(entry.theta);
            ok = lookup.row == entry.expected_row &&
                 satisfies_e_identity(entry.theta, assemble_e(entry.theta, lookup.sets));
            if (!ok) {
                std::ostringstream os;
                os << "theta " << entry.theta.to_string() << " selected row " << lookup.row
                   << ", expected " << entry.expected_row;
                what = os.str();
            }
        } catch (const Error& e) {
            what = e.what();
        }
        rows.record(ok, what);
    }
    out.push_back(rows.tally);

    Suite pres("presentation_soundness_corpus");
    const std::vector<CoefficientRing> rings = {
        CoefficientRing::integers(), CoefficientRing::mod(2), CoefficientRing::mod(3),
        CoefficientRing::mod(5)};
    for (const auto& theta : six_case_corpus()) {
        for (const auto& ring : rings) {
            bool ok = false;
            std::string what;
            try {
                Resolution res = Resolution::build(theta);
                Cohomology h = Cohomology::compute(res, ring);
                CupRing cup(theta, h);
                RingPresentation p = ring_presentation(theta, cup);
                ok = true;
                for (const auto& rel : p.relations) ok = ok && rel.verified;
                if (!ok) what = "unverified relation for theta " + theta.to_string();
            } catch (const Error& e) {
                what = std::string(e.what()) + " for theta " + theta.to_string();
            }
            pres.record(ok, what);
        }
    }
    out.push_back(pres.tally);

    Suite corpus_cases("six_case_classification");
    for (std::size_t i = 0; i < six_case_corpus().size(); ++i) {
        DerivationData d = derive_presentation_data(six_case_corpus()[i]);
        corpus_cases.record(d.case_index == static_cast<int>(i + 1),
                            "matrix " + six_case_corpus()[i].to_string() +
                                " classified as case " + std::to_string(d.case_index));
    }
    out.push_back(corpus_cases.tally);

    Suite roundtrip("report_roundtrip");
    for (const auto& theta :
         {GluingMatrix(1, 0, 0, 1), GluingMatrix(2, 1, 1, 1), GluingMatrix(0, 1, 1, 0)}) {
        Report rep = run_report(theta, {CoefficientRing::integers(), CoefficientRing::mod(2),
                                        CoefficientRing::mod(3)});
        std::string text = report_to_json(rep);
        Report back = report_from_json(text);
        bool ok = back == rep && report_to_json(back) == text;
        roundtrip.record(ok, "round trip not a fixed point for " + theta.to_string());
    }
    out.push_back(roundtrip.tally);
}

struct SampleSuites {
    Suite crash{"no_unexpected_errors"};
    Suite chain{"chain_complex"};
    Suite e_table{"e_identity_table"};
    Suite e_lattice{"e_identity_lattice"};
    Suite e_diff{"e_difference_annihilates"};
    Suite ledger{"augmentation_ledger"};
    Suite groups{"groups_match_case_formulas"};
    Suite euler{"euler_characteristic"};
    Suite duality{"mod2_duality"};
    Suite uct{"universal_coefficients"};
    Suite cupco{"cup_coefficient_consistency"};
    Suite sforms{"support_sum_closed_forms"};
    Suite anticomm{"cup_anticommutativity"};
    Suite modp_red{"modp_structure_reduction"};
    Suite gens{"generator_orders"};

    void merge_into(std::vector<SuiteTally>& out) {
        for (Suite* s : {&chain, &e_table, &e_lattice, &e_diff, &ledger, &groups, &euler, &duality,
                         &uct, &cupco, &sforms, &anticomm, &modp_red, &gens, &crash})
            out.push_back(s->tally);
    }
};

void run_sample_body(const GluingMatrix& theta, SampleSuites& s, long long& fallbacks) {
    const std::string id = theta.to_string();
    std::optional<Resolution> built;
    try {
        built = Resolution::build(theta);
    } catch (const Error& e) {
        s.chain.record(false, std::string(e.what()) + " for " + id);
        return;
    }
    const Resolution& res = *built;
    s.chain.record(true, "");
    if (res.e_from_lattice_fallback()) ++fallbacks;

    s.e_table.record(satisfies_e_identity(theta, res.E()), "table E fails identity for " + id);
    GroupRingElement oracle;
    try {
        oracle = solve_e_lattice(theta);
        s.e_lattice.record(true, "");
    } catch (const Error& e) {
        s.e_lattice.record(false, std::string(e.what()) + " for " + id);
        return;
    }
    {
        GroupRingElement diff = res.E() - oracle;
        GroupRingElement a_minus_1 = GroupRingElement::term({1, 0, 0}) - GroupRingElement::one();
        GroupRingElement one_minus_b = GroupRingElement::one() - GroupRingElement::term({0, 1, 0});
        bool ok = ring_mul(theta, diff, one_minus_b).is_zero() &&
                  ring_mul(theta, diff, a_minus_1).is_zero();
        s.e_diff.record(ok, "difference of constructions does not annihilate for " + id);
    }
    {
        bool ok = augmentation(res.A()) == 1 + theta.m1() && augmentation(res.B()) == theta.n1() &&
                  augmentation(res.C()) == theta.m2() &&
                  augmentation(res.D()) == 1 + theta.n2() &&
                  augmentation(res.E()) == -1 + theta.det();
        if (ok && res.index_sets())
            ok = res.index_sets()->sets.cardinality_difference() == theta.det();
        s.ledger.record(ok, "augmentation ledger failed for " + id);
    }

    const Cohomology hz = Cohomology::compute(res, CoefficientRing::integers());
    std::vector<std::pair<CoefficientRing, Cohomology>> modular;
    for (Int p : {2, 3, 5, 7, 11})
        modular.emplace_back(CoefficientRing::mod(p),
                             Cohomology::compute(res, CoefficientRing::mod(p)));

    {
        bool ok = true;
        auto expect_z = expected_invariant_factors(theta, CoefficientRing::integers());
        for (int k = 0; k < 4; ++k)
            ok = ok && hz.degree(k).group().invariant_factors == expect_z[k];
        for (const auto& [ring, h] : modular) {
            auto expect = expected_invariant_factors(theta, ring);
            for (int k = 0; k < 4; ++k)
                ok = ok && h.degree(k).group().invariant_factors == expect[k];
        }
        s.groups.record(ok, "groups disagree with case formulas for " + id);
    }
    {
        int chi = 0;
        for (int k = 0; k < 4; ++k) {
            int r = hz.degree(k).group().free_rank();
            chi += (k % 2 == 0) ? r : -r;
        }
        s.euler.record(chi == 0, "nonzero Euler characteristic for " + id);
    }
    {
        const Cohomology& h2 = modular[0].second;
        bool ok = true;
        for (int k = 0; k < 4; ++k)
            ok = ok && h2.degree(k).group().invariant_factors.size() ==
                           h2.degree(3 - k).group().invariant_factors.size();
        s.duality.record(ok, "mod-2 dimensions not symmetric for " + id);
    }
    {
        bool ok = true;
        for (const auto& [ring, hp] : modular) {
            Int p = ring.p;
            for (int k = 0; k < 4 && ok; ++k) {
                auto count_div = [&](int deg) {
                    if (deg > 3) return 0;
                    int c = 0;
                    for (Int f : hz.degree(deg).group().invariant_factors)
                        if (f != 0 && f % p == 0) ++c;
                    return c;
                };
                int expected = hz.degree(k).group().free_rank() + count_div(k) + count_div(k + 1);
                ok = static_cast<int>(hp.degree(k).group().invariant_factors.size()) == expected;
            }
        }
        s.uct.record(ok, "coefficient counting failed for " + id);
    }
    {
        bool ok = true;
        std::string what;
        try {
            (void)delta12_table(theta);
        } catch (const Error& e) {
            ok = false;
            what = std::string(e.what()) + " for " + id;
        }
        s.cupco.record(ok, what);
    }
    {
        bool ok =
            s_function(theta.alpha(), theta.gamma(), theta) == s_closed_form_alpha_gamma(theta) &&
            s_function(theta.beta(), theta.delta(), theta) == s_closed_form_beta_delta(theta);
        s.sforms.record(ok, "support sums disagree with closed forms for " + id);
    }
    {
        CupRing cup(theta, hz);
        const auto& h1 = hz.degree(1).group();
        bool ok = true;
        for (const auto& u : h1.generators) {
            for (const auto& v : h1.generators)
                ok = ok && cup.add(cup.cup(u, v), cup.cup(v, u)).is_zero();
            ok = ok && cup.scale(cup.cup(u, u), 2).is_zero();
        }
        s.anticomm.record(ok, "degree-1 anticommutativity failed for " + id);
    }
    {
        // Structure constants over Z_p are the integer ones reduced mod p.
        CupRing cupz(theta, hz);
        bool ok = true;
        for (const auto& [ring, hp] : modular) {
            CupRing cupp(theta, hp);
            for (int j = 0; j < 3 && ok; ++j)
                for (int k = 0; k < 3 && ok; ++k) {
                    Cochain uz = Cochain::dual_basis(1, j, CoefficientRing::integers());
                    Cochain vz = Cochain::dual_basis(1, k, CoefficientRing::integers());
                    Cochain up = Cochain::dual_basis(1, j, ring);
                    Cochain vp = Cochain::dual_basis(1, k, ring);
                    Cochain pz = cupz.cup_cochain(uz, vz);
                    Cochain pp = cupp.cup_cochain(up, vp);
                    for (int i = 0; i < 3; ++i)
                        ok = ok && mod_floor(pz.coords[i], ring.p) ==
                                       mod_floor(pp.coords[i], ring.p);
                }
        }
        s.modp_red.record(ok, "mod-p products are not reductions for " + id);
    }
    {
        bool ok = true;
        auto check_gens = [&](const Cohomology& h) {
            for (int k = 0; k < 4; ++k) {
                const auto& g = h.degree(k).group();
                for (std::size_t i = 0; i < g.generators.size(); ++i) {
                    Int f = g.invariant_factors[i];
                    if (!h.degree(k).is_cocycle(g.generators[i].coords) ||
                        h.degree(k).class_order(g.generators[i].coords) != (f == 0 ? 0 : f))
                        return false;
                }
            }
            return true;
        };
        ok = check_gens(hz);
        for (const auto& [ring, h] : modular) {
            (void)ring;
            ok = ok && check_gens(h);
        }
        s.gens.record(ok, "generator validity failed for " + id);
    }
}

void run_sample(const GluingMatrix& theta, SampleSuites& s, long long& fallbacks) {
    try {
        run_sample_body(theta, s, fallbacks);
        s.crash.record(true, "");
    } catch (const std::exception& e) {
        s.crash.record(false, std::string(e.what()) + " for " + theta.to_string());
    }
}

}  // namespace

VerificationReport run_verification(const VerifyOptions& options) {
    VerificationReport report;
    report.seed = options.seed;
    report.samples = options.samples;

    std::vector<GluingMatrix> thetas = sample_gluing_matrices(options.seed, options.samples);

    const int jobs = std::max(1, options.jobs);
    std::vector<SampleSuites> partial(jobs);
    std::vector<long long> fallback_counts(jobs, 0);
    if (jobs == 1) {
        for (const auto& theta : thetas) run_sample(theta, partial[0], fallback_counts[0]);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::vector<std::size_t>> owned(jobs);
        for (std::size_t i = 0; i < thetas.size(); ++i) owned[i % jobs].push_back(i);
        for (int w = 0; w < jobs; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t idx : owned[w])
                    run_sample(thetas[idx], partial[w], fallback_counts[w]);
            });
        }
        for (auto& t : pool) t.join();
    }
    // Merge in a fixed order so output does not depend on scheduling.
    SampleSuites merged;
    auto merge = [](Suite& into, const Suite& from) {
        into.tally.passed += from.tally.passed;
        into.tally.total += from.tally.total;
        for (const auto& f : from.tally.failures)
            if (into.tally.failures.size() < 5) into.tally.failures.push_back(f);
    };
    for (int w = 0; w < jobs; ++w) {
        merge(merged.crash, partial[w].crash);
        merge(merged.chain, partial[w].chain);
        merge(merged.e_table, partial[w].e_table);
        merge(merged.e_lattice, partial[w].e_lattice);
        merge(merged.e_diff, partial[w].e_diff);
        merge(merged.ledger, partial[w].ledger);
        merge(merged.groups, partial[w].groups);
        merge(merged.euler, partial[w].euler);
        merge(merged.duality, partial[w].duality);
        merge(merged.uct, partial[w].uct);
        merge(merged.cupco, partial[w].cupco);
        merge(merged.sforms, partial[w].sforms);
        merge(merged.anticomm, partial[w].anticomm);
        merge(merged.modp_red, partial[w].modp_red);
        merge(merged.gens, partial[w].gens);
        report.lattice_fallbacks += fallback_counts[w];
    }
    merged.merge_into(report.suites);

    run_group_ring_suites(options.seed, report.suites);
    run_corpus_suites(report.suites);

    for (const auto& t : report.suites) report.all_passed = report.all_passed && t.ok();
    return report;
}

std::string verification_to_text(const VerificationReport& report) {
    std::ostringstream os;
    os << "verify: seed=" << report.seed << " samples=" << report.samples << "\n";
    for (const auto& t : report.suites) {
        os << "  [" << (t.ok() ? "pass" : "FAIL") << "] " << t.name;
        for (std::size_t i = t.name.size(); i < 34; ++i) os << ' ';
        os << t.passed << "/" << t.total << "\n";
        for (const auto& f : t.failures) os << "         " << f << "\n";
    }
    os << "  lattice fallbacks: " << report.lattice_fallbacks << " (verified)\n";
    long long ok_count = 0;
    for (const auto& t : report.suites)
        if (t.ok()) ++ok_count;
    os << "verify: " << (report.all_passed ? "PASS" : "FAIL") << " (" << ok_count << "/"
       << report.suites.size() << " suites)\n";
    return os.str();
}

}  // namespace torusbundle
