#pragma once

#include "ehi/biorth.hpp"

namespace ehi {

// Multivariate elliptic binomial coefficient
//   [lam, kap]_{[a,b];t;p,q} = Delta_kap(a/b | t^n, 1/b)
//       * R*_kap( .. z_i(lam; t^{1-n} sqrt(a)) .. ; t^{1-n} sqrt(a), b/sqrt(a) ),
// independent of the padding rank n >= max(l(lam), l(kap)) (tested).
// Vanishes unless kap c= lam.
cx binomial_coefficient(const PartitionPair& lam, const PartitionPair& kap, cx a, cx b, cx t,
                        const Nome& nm, const QuadratureSpec& inner_spec, int n_pad = 0);

// sum_{kap c= bm c= lam} [lam,bm]_{[a,b]} [bm,kap]_{[a/b,1/b]}  (= delta_{lam,kap})
cx binomial_inversion_sum(const PartitionPair& lam, const PartitionPair& kap, cx a, cx b, cx t,
                          const Nome& nm, const QuadratureSpec& inner_spec);

// Jackson-type sum (Thm binom_jackson) under bcde = pq a: returns both sides.
struct BinomJackson {
    cx lhs; // [lam,kap]_{[a,c]}
    cx rhs;
};
BinomJackson binom_jackson_sides(const PartitionPair& lam, const PartitionPair& kap, cx a, cx b,
                                 cx c, cx d, cx e, cx t, const Nome& nm,
                                 const QuadratureSpec& inner_spec);

// Bailey-type sum (Thm binom_bailey): the b-side sum; symmetric under
// b -> b' with b b' d e = c a pq and b b' f g = a pq.
cx binom_bailey_sum(const PartitionPair& lam, const PartitionPair& kap, cx a, cx b, cx c, cx d,
                    cx e, cx f, cx g, cx t, const Nome& nm, const QuadratureSpec& inner_spec);

} // namespace ehi
