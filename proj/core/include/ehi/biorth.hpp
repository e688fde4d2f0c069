#pragma once

#include <optional>

#include "ehi/operators.hpp"

namespace ehi {

// Parameter set of the biorthogonal family: t^{2n-2} t0 t1 t2 t3 u0 u1 = pq.
struct BiorthParams {
    int n = 1;
    cx t0{}, t1{}, t2{}, t3{};
    cx u0{}, u1{};
    cx t{};
    Nome nm;

    BiorthParams(int n, cx t0, cx t1, cx t2, cx t3, cx u0, cx u1, cx t, Nome nm,
                 bool validate = true);

    // Hatted mirror: hat t0 = sqrt(t0 t1 t2 t3 / pq), hat t0 hat t_i = t0 t_i,
    // hat u_j / hat t0 = u_j / t0.  Satisfies the same balancing.
    BiorthParams hatted() const;

    std::array<cx, 6> density_params() const { return {t0, t1, t2, t3, u0, u1}; }
    TypeIIParams density() const;
    BiorthParams with_u_swapped() const;
};

struct RaiseStep {
    enum Kind { strip, q_raise, p_raise } kind;
    int rank; // rank after the step
};

// A member of the family, realized as a lazy operator composition.
struct BiorthFunction {
    BiorthParams params;
    PartitionPair pp;
    FunctionHandle handle;
    std::vector<RaiseStep> trace;

    cx operator()(std::span<const cx> z) const { return handle(z); }
};

// Recursive construction: strip trailing-zero rows via I+, add (0,1)^n rows
// via the q-raising D+, add (1,0)^n rows via the p-raising D+.  inner_spec
// controls the quadratures of any I+ factors.
BiorthFunction build_biorth(const BiorthParams& P, const PartitionPair& pp,
                            const QuadratureSpec& inner_spec);

// F^(n)_{lam mu}(u_0 : z;t;p,q), the factorized interpolation special case.
cx eval_F(cx u0, const PartitionPair& pp, std::span<const cx> z, cx t, const Nome& nm);
FunctionHandle make_F_handle(int n, cx u0, const PartitionPair& pp, cx t, const Nome& nm);

// Interpolation functions R*^(n)_{pp}(z;t0,u0;t;p,q).  The auxiliary triple
// (a1,a2,a3) with t^{n-1} a1 a2 a3 u0 = pq defaults to a1 = a2 = 1/2 with a3
// solved; the result does not depend on the choice (tested property).
struct InterpAux {
    cx a1{0.5, 0.0};
    cx a2{0.5, 0.0};
};

FunctionHandle interp_handle(const PartitionPair& pp, cx t0, cx u0, cx t, int n, const Nome& nm,
                             const QuadratureSpec& inner_spec, const InterpAux& aux = {});
cx eval_interp(const PartitionPair& pp, cx t0, cx u0, cx t, int n, std::span<const cx> z,
               const Nome& nm, const QuadratureSpec& inner_spec, const InterpAux& aux = {});

// <f,g> under the Type II density with parameters (t0..t3,u0,u1), normalized
// so <1,1> = 1.
cx inner_product(const FunctionHandle& f, const FunctionHandle& g, const BiorthParams& P,
                 const QuadratureSpec& spec, QuadratureDiag* d = nullptr);

// Closed form of the diagonal (Thm biorth_ip, third display):
// Delta_pp(1/(u0 u1) | t^n, t^{n-1}t0t1, t^{n-1}t0t2, t^{n-1}t0t3,
//          t^{1-n}/(t0 u0), t^{1-n}/(t0 u1))^{-1}
cx biorth_norm_closed(const BiorthParams& P, const PartitionPair& pp);

// Same value from the density ratio Delta(z(0;hat))/Delta(z(pp;hat)) via the
// regularized Gamma limit; an independent route used to pin the doubled-
// square symbol convention.
cx biorth_norm_density_ratio(const BiorthParams& P, const PartitionPair& pp);

// t0 <-> t1 swap constant:
//   C0_pp(t^{n-1}t1t2, t^{n-1}t1t3, pq t^{n-1}t0/u0, t^{1-n}/(t1 u1)) /
//   C0_pp(t^{n-1}t0t2, t^{n-1}t0t3, pq t^{n-1}t1/u0, t^{1-n}/(t0 u1))
cx swap_t0t1_closed(const BiorthParams& P, const PartitionPair& pp);

// Eigenvalue factors of the difference/integral equations.
cx eigen_ED(const PartitionPair& pp, cx v, cx w, cx t, int n, cx pnome, const Nome& nm);
cx eigen_EI(const PartitionPair& pp, cx v, cx w, cx t, int n, const Nome& nm);

// Pointwise residuals of the second-order eigenrelations at a sample point.
enum class EigenKind { Dq, Dp, It };
double check_eigen_equation(const BiorthParams& P, const PartitionPair& pp, EigenKind kind,
                            std::span<const cx> z, const QuadratureSpec& spec);

// |R~_lam(z(kap;t0); params) - R~_kap(z(lam;hat t0); hatted params)|, relative.
double check_evaluation_symmetry(const BiorthParams& P, const PartitionPair& lam,
                                 const PartitionPair& kap, const QuadratureSpec& spec);

} // namespace ehi
