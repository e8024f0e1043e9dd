#include "torusbundle/cohomology.hpp"

#include <algorithm>
#include <sstream>

namespace torusbundle {

CoefficientRing CoefficientRing::mod(Int p) {
    if (!is_prime(p)) {
        std::ostringstream os;
        os << "modulus " << p << " is not prime";
        throw InvalidPrimeError(os.str());
    }
    return {Kind::ModP, p};
}

std::string CoefficientRing::name() const {
    if (kind == Kind::Integers) return "Z";
    return "Z" + std::to_string(p);
}

CoefficientRing CoefficientRing::parse(const std::string& token, std::optional<Int> p) {
    if (token == "Z") return integers();
    if (token == "Zp") {
        if (!p) throw InvalidPrimeError("ring Zp requires an explicit prime");
        return mod(*p);
    }
    if (token.size() > 1 && token[0] == 'Z') {
        try {
            std::size_t pos = 0;
            Int v = std::stoll(token.substr(1), &pos);
            if (pos == token.size() - 1) return mod(v);
        } catch (const std::exception&) {
        }
    }
    throw InvalidPrimeError("unrecognized coefficient ring '" + token + "'");
}

Cochain Cochain::dual_basis(int degree, int index, CoefficientRing ring) {
    static const int dims[4] = {1, 3, 3, 1};
    if (degree < 0 || degree > 3) throw DegreeOutOfRangeError("cochain degree must be 0..3");
    Cochain c{degree, std::vector<Int>(dims[degree], 0), ring};
    c.coords.at(index) = 1;
    return c;
}

std::string Cochain::to_string() const {
    static const char* names[4][3] = {
        {"x*", "", ""}, {"y1*", "y2*", "y3*"}, {"z1*", "z2*", "z3*"}, {"w*", "", ""}};
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < coords.size(); ++i) {
        Int c = coords[i];
        if (c == 0) continue;
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        Int a = c < 0 ? -c : c;
        if (a != 1) os << a << "*";
        os << names[degree][i];
    }
    if (first) os << "0";
    return os.str();
}

int AbelianGroupPresentation::free_rank() const {
    return static_cast<int>(std::count(invariant_factors.begin(), invariant_factors.end(), 0));
}

std::string AbelianGroupPresentation::group_name() const {
    if (invariant_factors.empty()) return "0";
    std::ostringstream os;
    int free = 0;
    bool first = true;
    for (Int f : invariant_factors) {
        if (f == 0) {
            ++free;
            continue;
        }
        os << (first ? "" : " + ") << "Z_" << f;
        first = false;
    }
    if (free == 1) {
        os << (first ? "" : " + ") << "Z";
    } else if (free > 1) {
        os << (first ? "" : " + ") << "Z^" << free;
    }
    return os.str();
}

DualMatrices dual_matrices(const Resolution& res, CoefficientRing ring) {
    DualMatrices d{IntMatrix(3, 1), IntMatrix(3, 3), IntMatrix(1, 3)};
    for (int j = 0; j < 3; ++j) d.d1_dual.at(j, 0) = augmentation(res.d1()[j]);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) d.d2_dual.at(i, j) = augmentation(res.d2()[i][j]);
    for (int i = 0; i < 3; ++i) d.d3_dual.at(0, i) = augmentation(res.d3()[i]);
    if (ring.is_modular()) {
        auto reduce = [&](IntMatrix& m) {
            for (int i = 0; i < m.rows(); ++i)
                for (int j = 0; j < m.cols(); ++j) m.at(i, j) = mod_floor(m.at(i, j), ring.p);
        };
        reduce(d.d1_dual);
        reduce(d.d2_dual);
        reduce(d.d3_dual);
    }
    return d;
}

namespace {

Int det_small(const IntMatrix& m) {
    const int n = m.rows();
    if (n == 0) return 1;
    if (n == 1) return m.at(0, 0);
    if (n == 2)
        return checked_sub(checked_mul(m.at(0, 0), m.at(1, 1)),
                           checked_mul(m.at(0, 1), m.at(1, 0)));
    if (n == 3) {
        Int d = 0;
        d = checked_add(d, checked_mul(m.at(0, 0), checked_sub(checked_mul(m.at(1, 1), m.at(2, 2)),
                                                               checked_mul(m.at(1, 2), m.at(2, 1)))));
        d = checked_sub(d, checked_mul(m.at(0, 1), checked_sub(checked_mul(m.at(1, 0), m.at(2, 2)),
                                                               checked_mul(m.at(1, 2), m.at(2, 0)))));
        d = checked_add(d, checked_mul(m.at(0, 2), checked_sub(checked_mul(m.at(1, 0), m.at(2, 1)),
                                                               checked_mul(m.at(1, 1), m.at(2, 0)))));
        return d;
    }
    throw ConsistencyError("determinant only implemented for n <= 3");
}

// Inverse of a unimodular matrix of size <= 3 via the adjugate.
IntMatrix unimodular_inverse(const IntMatrix& m) {
    const int n = m.rows();
    Int d = det_small(m);
    if (d != 1 && d != -1) throw ConsistencyError("matrix is not unimodular");
    IntMatrix adj(n, n);
    if (n == 1) {
        adj.at(0, 0) = 1;
    } else if (n == 2) {
        adj.at(0, 0) = m.at(1, 1);
        adj.at(0, 1) = checked_neg(m.at(0, 1));
        adj.at(1, 0) = checked_neg(m.at(1, 0));
        adj.at(1, 1) = m.at(0, 0);
    } else {
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                int r0 = (i + 1) % 3, r1 = (i + 2) % 3, c0 = (j + 1) % 3, c1 = (j + 2) % 3;
                // adj(j, i) = cofactor(i, j); rows/cols chosen cyclically keep the sign.
                adj.at(j, i) = checked_sub(checked_mul(m.at(r0, c0), m.at(r1, c1)),
                                           checked_mul(m.at(r0, c1), m.at(r1, c0)));
            }
    }
    if (d == -1)
        for (int i = 0; i < n; ++i) adj.scale_row(i, -1);
    return adj;
}

Int mod_inverse(Int a, Int p) {
    auto [g, x, y] = extended_gcd(mod_floor(a, p), p);
    (void)y;
    if (g != 1) throw ConsistencyError("element not invertible mod p");
    return mod_floor(x, p);
}

// Reduced row echelon form mod p; returns pivot columns.
std::vector<int> rref_modp(IntMatrix& m, Int p) {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
        int pr = -1;
        for (int i = row; i < m.rows(); ++i)
            if (mod_floor(m.at(i, col), p) != 0) {
                pr = i;
                break;
            }
        if (pr < 0) continue;
        m.swap_rows(row, pr);
        Int inv = mod_inverse(m.at(row, col), p);
        for (int j = 0; j < m.cols(); ++j) m.at(row, j) = mod_floor(m.at(row, j) * inv, p);
        for (int i = 0; i < m.rows(); ++i) {
            if (i == row) continue;
            Int f = mod_floor(m.at(i, col), p);
            if (f == 0) continue;
            for (int j = 0; j < m.cols(); ++j)
                m.at(i, j) = mod_floor(m.at(i, j) - f * m.at(row, j), p);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

IntMatrix kernel_basis_modp(const IntMatrix& b, Int p) {
    IntMatrix r = b;
    std::vector<int> pivots = rref_modp(r, p);
    std::vector<int> free_cols;
    for (int j = 0; j < b.cols(); ++j)
        if (std::find(pivots.begin(), pivots.end(), j) == pivots.end()) free_cols.push_back(j);
    IntMatrix k(b.cols(), static_cast<int>(free_cols.size()));
    for (std::size_t idx = 0; idx < free_cols.size(); ++idx) {
        int j = free_cols[idx];
        k.at(j, static_cast<int>(idx)) = 1;
        for (std::size_t pi = 0; pi < pivots.size(); ++pi)
            k.at(pivots[pi], static_cast<int>(idx)) = mod_floor(-r.at(static_cast<int>(pi), j), p);
    }
    return k;
}

// Incremental independence test mod p over a growing set of columns.
struct ModpSpan {
    Int p;
    IntMatrix echelon;  // rows are reduced vectors
    std::vector<int> pivot_cols;

    explicit ModpSpan(int dim, Int p) : p(p), echelon(0, dim) {}

    bool add(std::vector<Int> v) {
        for (auto& x : v) x = mod_floor(x, p);
        for (int r = 0; r < echelon.rows(); ++r) {
            Int f = mod_floor(v[pivot_cols[r]], p);
            if (f == 0) continue;
            for (int j = 0; j < echelon.cols(); ++j)
                v[j] = mod_floor(v[j] - f * echelon.at(r, j), p);
        }
        int pc = -1;
        for (int j = 0; j < static_cast<int>(v.size()); ++j)
            if (v[j] != 0) {
                pc = j;
                break;
            }
        if (pc < 0) return false;
        Int inv = mod_inverse(v[pc], p);
        IntMatrix next(echelon.rows() + 1, echelon.cols());
        for (int r = 0; r < echelon.rows(); ++r)
            for (int j = 0; j < echelon.cols(); ++j) next.at(r, j) = echelon.at(r, j);
        for (int j = 0; j < echelon.cols(); ++j)
            next.at(echelon.rows(), j) = mod_floor(v[j] * inv, p);
        echelon = std::move(next);
        pivot_cols.push_back(pc);
        return true;
    }
};

// Solve m * x = v mod p; m has full column rank and the system is consistent.
std::vector<Int> solve_modp(const IntMatrix& m, const std::vector<Int>& v, Int p) {
    IntMatrix aug(m.rows(), m.cols() + 1);
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols()) = mod_floor(v[i], p);
    }
    std::vector<int> pivots = rref_modp(aug, p);
    std::vector<Int> x(m.cols(), 0);
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        if (pivots[r] == m.cols())
            throw ConsistencyError("inconsistent linear system mod p");
        x[pivots[r]] = aug.at(static_cast<int>(r), m.cols());
    }
    return x;
}

}  // namespace

CohomologyDegree CohomologyDegree::over_integers(int degree, const IntMatrix& outgoing,
                                                 const IntMatrix& incoming, CoefficientRing ring,
                                                 const std::optional<IntMatrix>& basis_override) {
    CohomologyDegree d;
    d.ring_ = ring;
    d.degree_ = degree;
    d.n_ = outgoing.cols();
    d.outgoing_ = outgoing;

    SmithForm sb = smith_normal_form(outgoing);
    const int k = d.n_ - sb.rank;
    IntMatrix kernel = sb.V.columns(sb.rank, d.n_);            // n x k
    d.kernel_coords_ = sb.Vinv.submatrix_rows(sb.rank);        // k x n

    if (basis_override) {
        const IntMatrix& kb = *basis_override;
        if (kb.rows() != d.n_ || kb.cols() != k)
            throw ConsistencyError("kernel basis override has the wrong shape");
        IntMatrix y = d.kernel_coords_ * kb;  // coordinates of the new basis
        if (kernel * y != kb)
            throw ConsistencyError("kernel basis override is not inside the kernel");
        IntMatrix yinv = unimodular_inverse(y);
        kernel = kb;
        d.kernel_coords_ = yinv * d.kernel_coords_;
    }

    IntMatrix image_coords = d.kernel_coords_ * incoming;  // k x m
    if (kernel * image_coords != incoming)
        throw ConsistencyError("image does not lie inside the kernel");
    SmithForm sm = smith_normal_form(image_coords);

    d.class_transform_ = sm.U;
    d.factors_all_.resize(k);
    for (int i = 0; i < k; ++i) d.factors_all_[i] = sm.diagonal(i);

    IntMatrix gens = kernel * sm.Uinv;  // columns are generator cochains
    // Deterministic sign: first nonzero coordinate of each generator
    // positive.  An overridden basis is already the documented choice and
    // is kept verbatim.
    if (!basis_override) {
        for (int i = 0; i < k; ++i) {
            for (int r = 0; r < d.n_; ++r) {
                if (gens.at(r, i) == 0) continue;
                if (gens.at(r, i) < 0) {
                    gens.scale_col(i, -1);
                    d.class_transform_.scale_row(i, -1);
                }
                break;
            }
        }
    }

    for (int i = 0; i < k; ++i) {
        if (d.factors_all_[i] == 1) continue;
        d.kept_.push_back(i);
        d.pres_.invariant_factors.push_back(d.factors_all_[i]);
        Cochain g{degree, std::vector<Int>(d.n_), ring};
        for (int r = 0; r < d.n_; ++r) g.coords[r] = gens.at(r, i);
        d.pres_.generators.push_back(std::move(g));
    }
    return d;
}

CohomologyDegree CohomologyDegree::over_modp(int degree, const IntMatrix& outgoing,
                                             const IntMatrix& incoming, CoefficientRing ring) {
    const Int p = ring.p;
    CohomologyDegree d;
    d.ring_ = ring;
    d.degree_ = degree;
    d.n_ = outgoing.cols();
    d.outgoing_ = outgoing;

    IntMatrix kernel = kernel_basis_modp(outgoing, p);
    ModpSpan span(d.n_, p);

    std::vector<std::vector<Int>> image_cols;
    for (int j = 0; j < incoming.cols(); ++j) {
        std::vector<Int> col(d.n_);
        for (int i = 0; i < d.n_; ++i) col[i] = incoming.at(i, j);
        if (span.add(col)) image_cols.push_back(std::move(col));
    }
    d.modp_image_dim_ = static_cast<int>(image_cols.size());

    std::vector<std::vector<Int>> gen_cols;
    for (int j = 0; j < kernel.cols(); ++j) {
        std::vector<Int> col(d.n_);
        for (int i = 0; i < d.n_; ++i) col[i] = kernel.at(i, j);
        if (span.add(col)) gen_cols.push_back(std::move(col));
    }

    d.modp_solve_ = IntMatrix(d.n_, d.modp_image_dim_ + static_cast<int>(gen_cols.size()));
    for (int j = 0; j < d.modp_image_dim_; ++j)
        for (int i = 0; i < d.n_; ++i) d.modp_solve_.at(i, j) = image_cols[j][i];
    for (std::size_t j = 0; j < gen_cols.size(); ++j) {
        for (int i = 0; i < d.n_; ++i)
            d.modp_solve_.at(i, d.modp_image_dim_ + static_cast<int>(j)) = gen_cols[j][i];
        d.pres_.invariant_factors.push_back(p);
        Cochain g{degree, gen_cols[j], ring};
        d.pres_.generators.push_back(std::move(g));
    }
    return d;
}

bool CohomologyDegree::is_cocycle(const std::vector<Int>& coords) const {
    if (static_cast<int>(coords.size()) != n_)
        throw DegreeOutOfRangeError("cochain has the wrong number of coordinates");
    std::vector<Int> img = outgoing_.apply(coords);
    if (ring_.is_modular()) {
        for (Int v : img)
            if (mod_floor(v, ring_.p) != 0) return false;
        return true;
    }
    return std::all_of(img.begin(), img.end(), [](Int v) { return v == 0; });
}

std::vector<Int> CohomologyDegree::canonical_from_kernel_coords(const std::vector<Int>& w) const {
    std::vector<Int> out;
    out.reserve(kept_.size());
    for (int i : kept_) {
        Int f = factors_all_[i];
        out.push_back(f == 0 ? w[i] : mod_floor(w[i], f));
    }
    return out;
}

std::vector<Int> CohomologyDegree::class_coords(const std::vector<Int>& coords) const {
    if (!is_cocycle(coords)) throw ConsistencyError("class_coords requires a cocycle");
    if (ring_.is_modular()) {
        std::vector<Int> x = solve_modp(modp_solve_, coords, ring_.p);
        return std::vector<Int>(x.begin() + modp_image_dim_, x.end());
    }
    std::vector<Int> y = kernel_coords_.apply(coords);
    std::vector<Int> w = class_transform_.apply(y);
    return canonical_from_kernel_coords(w);
}

bool CohomologyDegree::is_zero_class(const std::vector<Int>& coords) const {
    std::vector<Int> c = class_coords(coords);
    return std::all_of(c.begin(), c.end(), [](Int v) { return v == 0; });
}

Int CohomologyDegree::class_order(const std::vector<Int>& coords) const {
    std::vector<Int> c = class_coords(coords);
    if (ring_.is_modular())
        return std::all_of(c.begin(), c.end(), [](Int v) { return v == 0; }) ? 1 : ring_.p;
    Int order = 1;
    for (std::size_t i = 0; i < kept_.size(); ++i) {
        Int f = pres_.invariant_factors[i];
        if (f == 0) {
            if (c[i] != 0) return 0;  // infinite order
        } else if (c[i] != 0) {
            order = lcm(order, f / gcd(f, c[i]));
        }
    }
    return order;
}

Cohomology Cohomology::compute(const Resolution& res, CoefficientRing ring) {
    Cohomology h;
    h.ring_ = ring;
    DualMatrices dm = dual_matrices(res, ring);

    const IntMatrix none_in(1, 0);   // nothing maps into degree 0
    const IntMatrix none_out(0, 1);  // nothing maps out of degree 3

    std::array<const IntMatrix*, 4> outgoing = {&dm.d1_dual, &dm.d2_dual, &dm.d3_dual, &none_out};
    std::array<const IntMatrix*, 4> incoming = {&none_in, &dm.d1_dual, &dm.d2_dual, &dm.d3_dual};

    for (int k = 0; k < 4; ++k) {
        if (ring.is_modular()) {
            h.degrees_.push_back(
                CohomologyDegree::over_modp(k, *outgoing[k], *incoming[k], ring));
            continue;
        }
        std::optional<IntMatrix> override;
        if (k == 1 && res.theta().rank_minus_identity() == 1) {
            // Free part of degree 1 in the rank-1 case: the documented
            // primitive solution of the 2x2 system, next to y3*.
            const GluingMatrix& t = res.theta();
            Int u0, u1;
            if (checked_add(1, t.m1()) != 0 || t.n1() != 0) {
                Int g = gcd(checked_add(1, t.m1()), t.n1());
                u0 = checked_neg(t.n1() / g);
                u1 = checked_add(1, t.m1()) / g;
            } else {
                Int g = gcd(t.m2(), checked_add(1, t.n2()));
                u0 = checked_add(1, t.n2()) / g;
                u1 = checked_neg(t.m2() / g);
            }
            IntMatrix basis(3, 2);
            basis.at(0, 0) = u0;
            basis.at(1, 0) = u1;
            basis.at(2, 1) = 1;
            override = basis;
        }
        h.degrees_.push_back(
            CohomologyDegree::over_integers(k, *outgoing[k], *incoming[k], ring, override));
    }
    return h;
}

std::array<AbelianGroupPresentation, 4> Cohomology::groups() const {
    return {degrees_[0].group(), degrees_[1].group(), degrees_[2].group(), degrees_[3].group()};
}

std::string DerivationData::case_description() const {
    std::ostringstream os;
    os << "rank(theta - I) = " << rank << ", det(theta) = " << det;
    if (case_index == 3 || case_index == 4)
        os << ", gcd(beta, gamma, 2) = " << (case_index == 3 ? 1 : 2);
    return os.str();
}

DerivationData derive_presentation_data(const GluingMatrix& theta) {
    DerivationData data;
    data.rank = theta.rank_minus_identity();
    data.det = theta.det();

    if (data.rank == 0) {
        if (data.det != 1)
            throw DegenerateClassificationError("rank 0 forces determinant 1");
        data.case_index = 1;
        return data;
    }
    if (data.rank == 2) {
        data.case_index = data.det == 1 ? 5 : 6;
        return data;
    }

    if (data.det == 1) {
        data.case_index = 2;
    } else {
        Int g = gcd(theta.beta(), theta.gamma(), 2);
        if (g != 1 && g != 2)
            throw DegenerateClassificationError("gcd(beta, gamma, 2) outside {1, 2}");
        data.case_index = g == 1 ? 3 : 4;
    }

    // Rank-1 factorization of I - theta^-1 as the outer product (r', s')^T (q, p).
    Rank1Data r1;
    const Int a11 = checked_add(1, theta.m1());
    const Int a12 = theta.m2();
    const Int a21 = theta.n1();
    const Int a22 = checked_add(1, theta.n2());

    Int dq = 0, dp = 0;  // primitive row direction
    if (a11 != 0 || a12 != 0) {
        Int g = gcd(a11, a12);
        dq = a11 / g;
        dp = a12 / g;
    } else {
        Int g = gcd(a21, a22);
        dq = a21 / g;
        dp = a22 / g;
    }
    if (dq < 0 || (dq == 0 && dp < 0)) {
        dq = -dq;
        dp = -dp;
    }
    r1.q = dq;
    r1.p = dp;
    r1.r_prime = dq != 0 ? exact_div(a11, dq) : exact_div(a12, dp);
    r1.s_prime = dq != 0 ? exact_div(a21, dq) : exact_div(a22, dp);
    if (a11 != checked_mul(r1.q, r1.r_prime) || a12 != checked_mul(r1.p, r1.r_prime) ||
        a21 != checked_mul(r1.q, r1.s_prime) || a22 != checked_mul(r1.p, r1.s_prime))
        throw DegenerateClassificationError("rank-1 outer factorization failed");

    // Canonical Bezout pair p k + q ell = 1.
    if (r1.q == 0) {
        r1.k = r1.p;  // p = +-1 here
        r1.ell = 0;
    } else {
        auto [g, x, y] = extended_gcd(r1.p, r1.q);
        if (g != 1) throw DegenerateClassificationError("gcd(p, q) != 1");
        Int qa = checked_abs(r1.q);
        Int k0 = mod_floor(x, qa);
        Int k1 = checked_sub(k0, qa);
        r1.k = (checked_abs(k1) < checked_abs(k0)) ? k1 : k0;
        r1.ell = exact_div(checked_sub(1, checked_mul(r1.p, r1.k)), r1.q);
    }

    if (data.det == 1) {
        // qr' + ps' = 0, so p | r' and q | s' with opposite multipliers.
        r1.r_doubleprime = r1.p != 0 ? exact_div(r1.r_prime, r1.p)
                                     : exact_div(checked_neg(r1.s_prime), r1.q);
        Int rpp = *r1.r_doubleprime;
        if (r1.r_prime != checked_mul(r1.p, rpp) ||
            r1.s_prime != checked_mul(checked_neg(r1.q), rpp))
            throw DegenerateClassificationError("det=1 rank-1 structure violated");
    } else {
        if (checked_add(checked_mul(r1.p, r1.s_prime), checked_mul(r1.q, r1.r_prime)) != 2)
            throw DegenerateClassificationError("det=-1 rank-1 trace identity violated");
        Int m;
        if (r1.q != 0)
            m = exact_div(checked_sub(checked_mul(2, r1.k), r1.s_prime), r1.q);
        else
            m = exact_div(checked_sub(r1.r_prime, checked_mul(2, r1.ell)), r1.p);
        if (r1.s_prime != checked_sub(checked_mul(2, r1.k), checked_mul(r1.q, m)) ||
            r1.r_prime != checked_add(checked_mul(2, r1.ell), checked_mul(r1.p, m)))
            throw DegenerateClassificationError("det=-1 rank-1 linear system inconsistent");
        r1.m = m;
        if (data.case_index == 3 && m % 2 == 0)
            throw DegenerateClassificationError("gcd case 3 requires an odd m");
        if (data.case_index == 4 && m % 2 != 0)
            throw DegenerateClassificationError("gcd case 4 requires an even m");
        if (m % 2 == 0) r1.m_prime = m / 2;
    }

    data.rank1 = r1;
    return data;
}

}  // namespace torusbundle
