#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "ehi/special.hpp"

namespace ehi {

// Integer partition: non-increasing nonnegative parts, trailing zeros trimmed.
class Partition {
public:
    Partition() = default;
    Partition(std::initializer_list<long> parts);
    explicit Partition(std::vector<long> parts);

    // 1-based part access; parts beyond the length are 0.
    long part(std::size_t i) const {
        return (i >= 1 && i <= parts_.size()) ? parts_[i - 1] : 0;
    }
    std::size_t length() const { return parts_.size(); }
    long weight() const;
    bool empty() const { return parts_.empty(); }
    Partition conjugate() const;
    bool contains(const Partition& other) const; // componentwise
    const std::vector<long>& parts() const { return parts_; }

    bool operator==(const Partition&) const = default;

private:
    std::vector<long> parts_;
};

// Pair (lambda, mu); lambda indexes the p-direction, mu the q-direction.
// Containment is the product partial order.
struct PartitionPair {
    Partition lambda;
    Partition mu;

    PartitionPair() = default;
    PartitionPair(Partition l, Partition m) : lambda(std::move(l)), mu(std::move(m)) {}

    std::size_t length() const { return std::max(lambda.length(), mu.length()); }
    long weight() const { return lambda.weight() + mu.weight(); }
    bool empty() const { return lambda.empty() && mu.empty(); }
    bool contains(const PartitionPair& o) const {
        return lambda.contains(o.lambda) && mu.contains(o.mu);
    }
    // Row i as the (l,m) subscript pair of a theta factorial.
    std::pair<long, long> row(std::size_t i) const {
        return {lambda.part(i), mu.part(i)};
    }
    bool operator==(const PartitionPair&) const = default;
};

// All partitions nu with lo c= nu c= hi (componentwise), parts bounded by
// hi's length.
std::vector<Partition> partitions_between(const Partition& lo, const Partition& hi);

// All pairs bm with lo c= bm c= hi in the product order.
std::vector<PartitionPair> pairs_between(const PartitionPair& lo, const PartitionPair& hi);

// All pairs contained in (lmax^rows, mmax^rows).
std::vector<PartitionPair> pairs_in_box(long lmax, long mmax, int rows);

// --- Partition-indexed symbols -------------------------------------------
//
// C0_bm(x;t;p,q)  = prod_{i>=1} theta(t^{1-i} x;p,q)_{bm_i}
// C-_bm(x;t;p,q)  = prod_{1<=i<=j} tf(t^{j-i} x)_{bm_i-bm_{j+1}} / tf(t^{j-i} x)_{bm_i-bm_j}
// C+_bm(x;t;p,q)  = prod_{1<=i<=j} tf(t^{2-i-j} x)_{bm_i+bm_j} / tf(t^{2-i-j} x)_{bm_i+bm_{j+1}}
//
// Multiple arguments before the semicolon denote a product of symbols.

cx c0_symbol(const PartitionPair& pp, cx x, cx t, const Nome& nm);
cx c0_symbol(const PartitionPair& pp, std::span<const cx> xs, cx t, const Nome& nm);
cx cminus_symbol(const PartitionPair& pp, cx x, cx t, const Nome& nm);
cx cplus_symbol(const PartitionPair& pp, cx x, cx t, const Nome& nm);

// Delta0_bm(a | b_1..b_k;t;p,q) = C0_bm(..b_i..) / C0_bm(..pq a/b_i..)
cx delta0(const PartitionPair& pp, cx a, std::span<const cx> bs, cx t, const Nome& nm);
cx delta0(const PartitionPair& pp, cx a, std::initializer_list<cx> bs, cx t, const Nome& nm);

// Delta_bm(a | ...) = Delta0_bm(a | ...) *
//     C0_{2 bm^2}(pq a) / ( C-_bm(pq) C-_bm(t) C+_bm(a) C+_bm(pq a/t) ),
// where C0_{2 bm^2}(x) = prod_i theta(t^{2(1-i)} x;p,q)_{2 lambda_i, 2 mu_i}.
// That reading of the doubled-square symbol is pinned by requiring the
// closed-form inner-product norms to match quadrature (see tests).
cx delta_full(const PartitionPair& pp, cx a, std::span<const cx> bs, cx t, const Nome& nm);
cx delta_full(const PartitionPair& pp, cx a, std::initializer_list<cx> bs, cx t, const Nome& nm);

// Geometric evaluation points z_i(bm;a) = p^{lambda_i} q^{mu_i} t^{n-i} a.
std::vector<cx> z_points(const PartitionPair& pp, cx a, cx t, int n, const Nome& nm);

} // namespace ehi
