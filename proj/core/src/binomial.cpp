#include "ehi/binomial.hpp"

namespace ehi {

cx binomial_coefficient(const PartitionPair& lam, const PartitionPair& kap, cx a, cx b, cx t,
                        const Nome& nm, const QuadratureSpec& inner_spec, int n_pad) {
    int n = n_pad > 0 ? n_pad : (int)std::max(lam.length(), kap.length());
    if (n == 0)
        return 1.0;
    if (n < (int)std::max(lam.length(), kap.length()))
        throw std::domain_error("binomial_coefficient: rank too small");
    cx sa = std::sqrt(a);
    cx t1n = std::pow(t, 1 - n);
    cx pref = delta_full(kap, a / b, {std::pow(t, n), 1.0 / b}, t, nm);
    auto z = z_points(lam, t1n * sa, t, n, nm);
    cx rs = eval_interp(kap, t1n * sa, b / sa, t, n, z, nm, inner_spec);
    return pref * rs;
}

cx binomial_inversion_sum(const PartitionPair& lam, const PartitionPair& kap, cx a, cx b, cx t,
                          const Nome& nm, const QuadratureSpec& inner_spec) {
    if (!lam.contains(kap))
        return 0.0;
    cx total = 0.0;
    for (const auto& bm : pairs_between(kap, lam))
        total += binomial_coefficient(lam, bm, a, b, t, nm, inner_spec) *
                 binomial_coefficient(bm, kap, a / b, 1.0 / b, t, nm, inner_spec);
    return total;
}

BinomJackson binom_jackson_sides(const PartitionPair& lam, const PartitionPair& kap, cx a, cx b,
                                 cx c, cx d, cx e, cx t, const Nome& nm,
                                 const QuadratureSpec& inner_spec) {
    cx pq = nm.p * nm.q;
    BinomJackson out;
    out.lhs = binomial_coefficient(lam, kap, a, c, t, nm, inner_spec);
    cx sum = 0.0;
    for (const auto& bm : pairs_between(kap, lam))
        sum += delta0(bm, a / b, {c / b, pq * a, d, e}, t, nm) *
               binomial_coefficient(lam, bm, a, b, t, nm, inner_spec) *
               binomial_coefficient(bm, kap, a / b, c / b, t, nm, inner_spec);
    cx pref = delta0(kap, a / c, {1.0 / c, b * d, b * e, pq * a / b}, t, nm) /
              delta0(lam, a, {c, b * d, b * e, pq * a / b}, t, nm);
    out.rhs = pref * sum;
    return out;
}

cx binom_bailey_sum(const PartitionPair& lam, const PartitionPair& kap, cx a, cx b, cx c, cx d,
                    cx e, cx f, cx g, cx t, const Nome& nm, const QuadratureSpec& inner_spec) {
    cx pq = nm.p * nm.q;
    cx pref = delta0(lam, a, {b, a * pq / (b * f)}, t, nm) /
              delta0(kap, a / c, {b / c, a * pq / (b * d)}, t, nm);
    cx sum = 0.0;
    for (const auto& bm : pairs_between(kap, lam))
        sum += delta0(bm, a / b, {c / b, f, g}, t, nm) /
               delta0(bm, a / b, {1.0 / b, d, e}, t, nm) *
               binomial_coefficient(lam, bm, a, b, t, nm, inner_spec) *
               binomial_coefficient(bm, kap, a / b, c / b, t, nm, inner_spec);
    return pref * sum;
}

} // namespace ehi
