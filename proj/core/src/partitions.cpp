#include "ehi/partitions.hpp"

#include <algorithm>
#include <numeric>

namespace ehi {

namespace {

void validate_and_trim(std::vector<long>& p) {
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] < 0)
            throw std::domain_error("Partition: negative part");
        if (i + 1 < p.size() && p[i] < p[i + 1])
            throw std::domain_error("Partition: parts must be non-increasing");
    }
    while (!p.empty() && p.back() == 0)
        p.pop_back();
}

} // namespace

Partition::Partition(std::initializer_list<long> parts) : parts_(parts) {
    validate_and_trim(parts_);
}

Partition::Partition(std::vector<long> parts) : parts_(std::move(parts)) {
    validate_and_trim(parts_);
}

long Partition::weight() const {
    return std::accumulate(parts_.begin(), parts_.end(), 0L);
}

Partition Partition::conjugate() const {
    if (parts_.empty())
        return {};
    std::vector<long> c((std::size_t)parts_[0], 0);
    for (long col = 0; col < parts_[0]; ++col)
        for (long row : parts_)
            if (row > col)
                ++c[(std::size_t)col];
    return Partition(std::move(c));
}

bool Partition::contains(const Partition& other) const {
    for (std::size_t i = 1; i <= other.length(); ++i)
        if (part(i) < other.part(i))
            return false;
    return true;
}

std::vector<Partition> partitions_between(const Partition& lo, const Partition& hi) {
    if (!hi.contains(lo))
        return {};
    std::vector<Partition> out;
    std::vector<long> cur(hi.length(), 0);
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i > hi.length()) {
            out.emplace_back(cur);
            return;
        }
        long top = std::min<long>(hi.part(i), i >= 2 ? cur[i - 2] : hi.part(1));
        for (long v = lo.part(i); v <= top; ++v) {
            cur[i - 1] = v;
            self(self, i + 1);
        }
    };
    if (hi.length() == 0)
        out.emplace_back();
    else
        rec(rec, 1);
    return out;
}

std::vector<PartitionPair> pairs_between(const PartitionPair& lo, const PartitionPair& hi) {
    std::vector<PartitionPair> out;
    for (const auto& l : partitions_between(lo.lambda, hi.lambda))
        for (const auto& m : partitions_between(lo.mu, hi.mu))
            out.emplace_back(l, m);
    return out;
}

std::vector<PartitionPair> pairs_in_box(long lmax, long mmax, int rows) {
    std::vector<long> l((std::size_t)rows, lmax), m((std::size_t)rows, mmax);
    return pairs_between({}, {Partition(std::move(l)), Partition(std::move(m))});
}

cx c0_symbol(const PartitionPair& pp, cx x, cx t, const Nome& nm) {
    cx r = 1.0, arg = x; // t^{1-i} x starting at i=1
    for (std::size_t i = 1; i <= pp.length(); ++i) {
        auto [l, m] = pp.row(i);
        r *= theta_factorial(arg, l, m, nm);
        arg /= t;
    }
    return r;
}

cx c0_symbol(const PartitionPair& pp, std::span<const cx> xs, cx t, const Nome& nm) {
    cx r = 1.0;
    for (cx x : xs)
        r *= c0_symbol(pp, x, t, nm);
    return r;
}

cx cminus_symbol(const PartitionPair& pp, cx x, cx t, const Nome& nm) {
    cx r = 1.0;
    const std::size_t len = pp.length();
    for (std::size_t i = 1; i <= len; ++i) {
        cx arg = x; // t^{j-i} x at j=i
        for (std::size_t j = i; j <= len; ++j) {
            long ln = pp.lambda.part(i) - pp.lambda.part(j + 1);
            long mn = pp.mu.part(i) - pp.mu.part(j + 1);
            long ld = pp.lambda.part(i) - pp.lambda.part(j);
            long md = pp.mu.part(i) - pp.mu.part(j);
            if (ln != ld || mn != md)
                r *= theta_factorial(arg, ln, mn, nm) / theta_factorial(arg, ld, md, nm);
            arg *= t;
        }
    }
    return r;
}

cx cplus_symbol(const PartitionPair& pp, cx x, cx t, const Nome& nm) {
    cx r = 1.0;
    const std::size_t len = pp.length();
    for (std::size_t i = 1; i <= len; ++i) {
        cx arg = x / std::pow(t, (double)(2 * i - 2)); // t^{2-i-j} x at j=i
        for (std::size_t j = i; j <= len; ++j) {
            long ln = pp.lambda.part(i) + pp.lambda.part(j);
            long mn = pp.mu.part(i) + pp.mu.part(j);
            long ld = pp.lambda.part(i) + pp.lambda.part(j + 1);
            long md = pp.mu.part(i) + pp.mu.part(j + 1);
            if (ln != ld || mn != md)
                r *= theta_factorial(arg, ln, mn, nm) / theta_factorial(arg, ld, md, nm);
            arg /= t;
        }
    }
    return r;
}

cx delta0(const PartitionPair& pp, cx a, std::span<const cx> bs, cx t, const Nome& nm) {
    cx r = 1.0, pqa = nm.p * nm.q * a;
    for (cx b : bs) {
        cx den = c0_symbol(pp, pqa / b, t, nm);
        if (std::abs(den) < 1e-13)
            throw pole_error("delta0: denominator symbol vanishes");
        r *= c0_symbol(pp, b, t, nm) / den;
    }
    return r;
}

cx delta0(const PartitionPair& pp, cx a, std::initializer_list<cx> bs, cx t, const Nome& nm) {
    return delta0(pp, a, std::span<const cx>(bs.begin(), bs.size()), t, nm);
}

namespace {

// C0_{2 bm^2}(x;t;p,q): row i uses subscript (2 lambda_i, 2 mu_i) and the
// doubled ladder t^{2(1-i)}.
cx c0_doubled_square(const PartitionPair& pp, cx x, cx t, const Nome& nm) {
    cx r = 1.0, arg = x, t2 = t * t;
    for (std::size_t i = 1; i <= pp.length(); ++i) {
        auto [l, m] = pp.row(i);
        r *= theta_factorial(arg, 2 * l, 2 * m, nm);
        arg /= t2;
    }
    return r;
}

} // namespace

cx delta_full(const PartitionPair& pp, cx a, std::span<const cx> bs, cx t, const Nome& nm) {
    cx pq = nm.p * nm.q;
    cx num = delta0(pp, a, bs, t, nm) * c0_doubled_square(pp, pq * a, t, nm);
    cx den = cminus_symbol(pp, pq, t, nm) * cminus_symbol(pp, t, t, nm) *
             cplus_symbol(pp, a, t, nm) * cplus_symbol(pp, pq * a / t, t, nm);
    if (std::abs(den) < 1e-300)
        throw pole_error("delta_full: denominator symbol vanishes");
    return num / den;
}

cx delta_full(const PartitionPair& pp, cx a, std::initializer_list<cx> bs, cx t, const Nome& nm) {
    return delta_full(pp, a, std::span<const cx>(bs.begin(), bs.size()), t, nm);
}

std::vector<cx> z_points(const PartitionPair& pp, cx a, cx t, int n, const Nome& nm) {
    if ((int)pp.length() > n)
        throw std::domain_error("z_points: pair longer than rank");
    std::vector<cx> z((std::size_t)n);
    for (int i = 1; i <= n; ++i)
        z[(std::size_t)(i - 1)] = std::pow(nm.p, (double)pp.lambda.part((std::size_t)i)) *
                                  std::pow(nm.q, (double)pp.mu.part((std::size_t)i)) *
                                  std::pow(t, (double)(n - i)) * a;
    return z;
}

} // namespace ehi
