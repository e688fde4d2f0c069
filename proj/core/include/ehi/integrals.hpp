#pragma once

#include <array>
#include <optional>
#include <vector>

#include "ehi/handle.hpp"
#include "ehi/partitions.hpp"
#include "ehi/quadrature.hpp"

namespace ehi {

// --- shared torus machinery ------------------------------------------------

// Integrand of the BC_n-symmetric product shape
//   prod_i axis(z_i) * prod_{i<j} pair(z_i z_j) pair(z_i / z_j) * extra(z),
// integrated over the unit n-torus.  axis and pair are tabulated on the
// grid (pair values land on phase-offset copies of the same grid), so the
// per-point cost is lookups; extra is evaluated pointwise.
struct BCIntegrand {
    std::function<cx(cx)> axis;
    std::function<cx(cx)> pair;  // optional
    TorusFn extra;               // optional
};

cx bc_torus_mean_fixed(const BCIntegrand& f, int n, int M);
cx bc_torus_mean_fixed(const BCIntegrand& f, int n, int M, double* mean_abs);
QuadratureResult bc_torus_integrate(const BCIntegrand& f, int n, const QuadratureSpec& spec,
                                    bool throw_on_failure = true);

// --- parameter sets ----------------------------------------------------------

// I^(m)_{BC_n}: 2m+2n+4 parameters inside the unit disc with
// prod t_r = (pq)^{m+1}.
struct BCTypeIParams {
    int m = 0;
    int n = 0;
    std::vector<cx> t;
    Nome nm;

    BCTypeIParams(int m, int n, std::vector<cx> t, Nome nm);
};

// I^(m)_{A_n}: m+n+2 lower and upper parameters, balancing
// prod t_r u_r = (pq)^{m+1}, contour validity |u_r| < |Z|^{1/(n+1)} < 1/|t_r|.
struct ATypeParams {
    int m = 0;
    int n = 0;
    cx Z{1.0};
    std::vector<cx> t;
    std::vector<cx> u;
    Nome nm;

    ATypeParams(int m, int n, cx Z, std::vector<cx> t, std::vector<cx> u, Nome nm);
};

// Type II: coupling t and six parameters with t^{2n-2} prod t_r = pq.
struct TypeIIParams {
    int n = 1;
    cx t;
    std::array<cx, 6> tr{};
    Nome nm;

    TypeIIParams(int n, cx t, std::array<cx, 6> tr, Nome nm);
};

// II^(n)_{lam,mu}: eight parameters, t^{2n-2} prod t_r = p^2 q^2 (plain) or
// t^{2n+2} prod t_r = p^2 q^2 (tilde-normalized form).
struct IIParams {
    int n = 1;
    PartitionPair lam;
    PartitionPair mu;
    cx t;
    std::array<cx, 8> tr{};
    Nome nm;

    IIParams(int n, PartitionPair lam, PartitionPair mu, cx t, std::array<cx, 8> tr, Nome nm,
             bool tilde_balancing = false);
};

// --- evaluations -------------------------------------------------------------

// Generic torus mean of a handle (plumbing entry point used by tests).
QuadratureResult torus_integrate_handle(const FunctionHandle& f, const QuadratureSpec& spec);

cx eval_I_BC(const BCTypeIParams& P, const QuadratureSpec& spec, QuadratureDiag* d = nullptr);

// Closed form of Corollary big_jackson (m = 0).
cx type1_closed_form(const BCTypeIParams& P);

cx eval_I_A(const ATypeParams& P, const QuadratureSpec& spec, QuadratureDiag* d = nullptr);

cx eval_type2(const TypeIIParams& P, const QuadratureSpec& spec, QuadratureDiag* d = nullptr);

// Type II closed form: prod_{j<n} Gamma(t^{j+1}) prod_{r<s} Gamma(t^j t_r t_s).
cx type2_closed_form(const TypeIIParams& P);

// Type II density integral with an extra pointwise factor (used by the
// scalar product and the II integrals).
cx eval_type2_weighted(const TypeIIParams& P, const TorusFn& extra, const QuadratureSpec& spec,
                       QuadratureDiag* d = nullptr);

cx eval_II(const IIParams& P, const QuadratureSpec& spec, QuadratureDiag* d = nullptr);
cx eval_II_tilde(const IIParams& P, const QuadratureSpec& spec, QuadratureDiag* d = nullptr);

// Numerical check of the t_1 -> 1/t_0 reduction limit: the ratio
//   I^(m)_{BC_n} / ( Gamma(t_0 t_1) prod_{r>=2} Gamma(t_0 t_r, t_1 t_r) )
// extrapolated along t_1 = (1+h)/t_0 (h < 0 keeps |t_1| < 1) against
// I^(m)_{BC_{n-1}}(t_2,...).  The trailing parameter is re-solved from the
// balancing condition at each h.
struct BBReductionReport {
    std::vector<double> hs;
    std::vector<cx> ratios;
    cx extrapolated{};
    cx target{};
    double residual = 0;      // |extrapolated - target| / |target|
    double extrap_spread = 0; // |extrapolated - last ratio|, conditioning probe
    bool ill_conditioned = false;
};

BBReductionReport verify_limit_bb_reduction(const BCTypeIParams& base, std::span<const double> hs,
                                            const QuadratureSpec& spec);

// (x;x)_inf for the Dedekind-type prefactors.
cx euler_product(cx x);

} // namespace ehi
