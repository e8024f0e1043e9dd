#include "torusbundle/group_ring.hpp"

#include <sstream>

namespace torusbundle {

GroupRingElement GroupRingElement::term(GroupElement g, Int coeff) {
    GroupRingElement x;
    x.add_term(g, coeff);
    return x;
}

Int GroupRingElement::coeff(GroupElement g) const {
    auto it = terms_.find(g);
    return it == terms_.end() ? 0 : it->second;
}

void GroupRingElement::add_term(GroupElement g, Int coeff) {
    if (coeff == 0) return;
    auto [it, inserted] = terms_.emplace(g, coeff);
    if (!inserted) {
        it->second = checked_add(it->second, coeff);
        if (it->second == 0) terms_.erase(it);
    }
}

GroupRingElement GroupRingElement::operator+(const GroupRingElement& o) const {
    GroupRingElement r = *this;
    for (const auto& [g, c] : o.terms_) r.add_term(g, c);
    return r;
}

GroupRingElement GroupRingElement::operator-(const GroupRingElement& o) const {
    GroupRingElement r = *this;
    for (const auto& [g, c] : o.terms_) r.add_term(g, checked_neg(c));
    return r;
}

GroupRingElement GroupRingElement::operator-() const {
    GroupRingElement r;
    for (const auto& [g, c] : terms_) r.terms_.emplace(g, checked_neg(c));
    return r;
}

GroupRingElement GroupRingElement::scaled(Int c) const {
    GroupRingElement r;
    if (c == 0) return r;
    for (const auto& [g, x] : terms_) r.terms_.emplace(g, checked_mul(x, c));
    return r;
}

std::string GroupRingElement::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [g, c] : terms_) {
        Int a = c;
        if (first) {
            if (a < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (a < 0 ? " - " : " + ");
            a = a < 0 ? -a : a;
        }
        first = false;
        if (a != 1) os << a << "*";
        os << "(";
        if (g.m == 0 && g.n == 0)
            os << "1";
        else {
            if (g.m != 0) {
                os << "a";
                if (g.m != 1) os << "^" << g.m;
            }
            if (g.n != 0) {
                if (g.m != 0) os << " ";
                os << "b";
                if (g.n != 1) os << "^" << g.n;
            }
        }
        os << ", ";
        if (g.k == 0)
            os << "1";
        else {
            os << "t";
            if (g.k != 1) os << "^" << g.k;
        }
        os << ")";
    }
    return os.str();
}

GroupElement mul_elements(const GluingMatrix& theta, GroupElement g, GroupElement h) {
    auto [tm, tn] = theta.power_apply(g.k, {h.m, h.n});
    return {checked_add(g.m, tm), checked_add(g.n, tn), checked_add(g.k, h.k)};
}

GroupElement inverse_element(const GluingMatrix& theta, GroupElement g) {
    auto [tm, tn] = theta.power_apply(checked_neg(g.k), {g.m, g.n});
    return {checked_neg(tm), checked_neg(tn), checked_neg(g.k)};
}

GroupRingElement ring_mul(const GluingMatrix& theta, const GroupRingElement& x,
                          const GroupRingElement& y) {
    GroupRingElement r;
    for (const auto& [g, cg] : x.terms())
        for (const auto& [h, ch] : y.terms())
            r.add_term(mul_elements(theta, g, h), checked_mul(cg, ch));
    return r;
}

Int augmentation(const GroupRingElement& x) {
    Int s = 0;
    for (const auto& [g, c] : x.terms()) s = checked_add(s, c);
    return s;
}

GroupRingElement fox_power(Int exponent, Axis axis) {
    GroupRingElement r;
    auto unit = [&](Int e) -> GroupElement {
        return axis == Axis::A ? GroupElement{e, 0, 0} : GroupElement{0, e, 0};
    };
    if (exponent > 0) {
        for (Int i = 0; i < exponent; ++i) r.add_term(unit(i), 1);
    } else if (exponent < 0) {
        for (Int i = 1; i <= -exponent; ++i) r.add_term(unit(-i), -1);
    }
    return r;
}

}  // namespace torusbundle
