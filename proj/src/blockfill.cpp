#include "adacomp/blockfill.hpp"

#include "adacomp/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace adacomp::blockfill {

namespace {

void require_positive_descending(const Vector& Lambdas) {
    if (Lambdas.size() == 0) throw DomainError("block-filling: empty spectrum");
    for (int i = 0; i < Lambdas.size(); ++i)
        if (Lambdas[i] <= 0.0)
            throw DomainError("block-filling: eigenvalues must be strictly positive");
    for (int i = 0; i + 1 < Lambdas.size(); ++i)
        if (Lambdas[i + 1] > Lambdas[i] * (1.0 + 1e-12))
            throw DomainError("block-filling: eigenvalues must be nonincreasing");
}

// r and mu for the q = min(m, N) leading channels.
std::pair<int, double> level_for(const Vector& Lambdas, int m) {
    const int q = std::min<int>(m, static_cast<int>(Lambdas.size()));
    const Vector head = Lambdas.head(q);
    const int r = waterfill::find_r(head);
    return {r, waterfill::water_level(head, r)};
}

} // namespace

BlockAllocation make_allocation(const Vector& Lambdas, int m,
                                const std::vector<long long>& counts) {
    require_positive_descending(Lambdas);
    if (m < 0) throw DomainError("block-filling: m must be nonnegative");
    if (static_cast<Eigen::Index>(counts.size()) != Lambdas.size())
        throw DomainError("block-filling: one count per channel required");
    long long total = 0;
    for (long long c : counts) {
        if (c < 0) throw DomainError("block-filling: counts must be nonnegative");
        total += c;
    }
    if (total != m)
        throw DomainError("block-filling: counts sum to " + std::to_string(total) +
                          ", expected m = " + std::to_string(m));

    BlockAllocation a;
    a.m = m;
    a.counts = counts;
    a.gamma.resize(Lambdas.size());
    a.heights.resize(Lambdas.size());
    a.gain = 0.0;
    for (int i = 0; i < Lambdas.size(); ++i) {
        a.gamma[i] = (m == 0) ? 0.0 : static_cast<double>(counts[(std::size_t)i]) / m;
        a.heights[i] = 1.0 / Lambdas[i] + a.gamma[i];
        a.gain += 0.5 * std::log1p(Lambdas[i] * a.gamma[i]);
    }
    return a;
}

BlockAllocation greedy_blockfill(const Vector& Lambdas, int m) {
    require_positive_descending(Lambdas);
    if (m < 0) throw DomainError("block-filling: m must be nonnegative");

    const int n = static_cast<int>(Lambdas.size());
    std::vector<long long> counts(static_cast<std::size_t>(n), 0);
    Vector heights(n);
    for (int i = 0; i < n; ++i) heights[i] = 1.0 / Lambdas[i];

    for (int block = 0; block < m; ++block) {
        const double hmin = heights.minCoeff();
        int pick = 0;
        while (heights[pick] > hmin + 1e-10 * hmin) ++pick;
        counts[(std::size_t)pick] += 1;
        heights[pick] = 1.0 / Lambdas[pick] +
                        static_cast<double>(counts[(std::size_t)pick]) / m;
    }
    return make_allocation(Lambdas, m, counts);
}

BlockAllocation optimal_blockfill(const Vector& Lambdas, int m) {
    require_positive_descending(Lambdas);
    if (m < 0) throw DomainError("block-filling: m must be nonnegative");
    const int n = static_cast<int>(Lambdas.size());
    if (m == 0) return make_allocation(Lambdas, 0, std::vector<long long>((std::size_t)n, 0));

    const auto [r, mu] = level_for(Lambdas, m);
    (void)r;

    // theta': the most blocks each channel can take without its height
    // passing the water level. The nudge keeps exact flat tops intact.
    std::vector<long long> counts(static_cast<std::size_t>(n), 0);
    long long used = 0;
    for (int i = 0; i < n; ++i) {
        const double room = (mu - 1.0 / Lambdas[i]) * m;
        const long long c = std::max<long long>(0, static_cast<long long>(std::floor(room + 1e-9)));
        counts[(std::size_t)i] = c;
        used += c;
    }
    long long leftover = m - used;

    // One extra block each for the lowest leftover channels.
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        const double ha = 1.0 / Lambdas[a] + static_cast<double>(counts[(std::size_t)a]) / m;
        const double hb = 1.0 / Lambdas[b] + static_cast<double>(counts[(std::size_t)b]) / m;
        return ha < hb;
    });
    for (long long j = 0; j < leftover; ++j)
        counts[(std::size_t)order[(std::size_t)j]] += 1;

    return make_allocation(Lambdas, m, counts);
}

bool lemma6_certificate(const BlockAllocation& alloc, const Vector& Lambdas, int m) {
    require_positive_descending(Lambdas);
    if (alloc.m != m) throw DomainError("lemma6_certificate: allocation built for a different m");
    if (static_cast<Eigen::Index>(alloc.counts.size()) != Lambdas.size())
        throw DomainError("lemma6_certificate: allocation/spectrum size mismatch");
    if (m == 0) return true;

    const auto [r, mu] = level_for(Lambdas, m);
    const double slack = 1e-9 * std::max(1.0, mu);
    const double lo = mu - 1.0 / m - slack;
    const double hi = mu + 1.0 / m + slack;
    for (int i = 0; i < Lambdas.size(); ++i) {
        if (alloc.counts[(std::size_t)i] == 0) continue;
        if (i + 1 > r) return false;
        const double h = alloc.heights[i];
        if (!(h > lo && h < hi)) return false;
    }
    return true;
}

TheoremConditionReport check_theorem4(const std::vector<int>& S, const Vector& Lambdas, int m) {
    require_positive_descending(Lambdas);
    if (m < 1) throw DomainError("check_theorem4: m must be >= 1");
    for (int idx : S)
        if (idx < 1 || idx > Lambdas.size())
            throw DomainError("check_theorem4: S contains an index outside 1..N");

    TheoremConditionReport rep;
    rep.theorem = Theorem::T4;
    rep.S = S;
    rep.r = level_for(Lambdas, m).first;
    rep.holds = true;
    for (int k = 1; k <= rep.r; ++k)
        if (std::find(S.begin(), S.end(), k) == S.end()) {
            rep.holds = false;
            break;
        }
    return rep;
}

TheoremConditionReport check_theorem5(const Vector& lambdas, double sigma2, int m) {
    if (sigma2 <= 0.0) throw DomainError("check_theorem5: sigma^2 must be positive");
    if (m < 1) throw DomainError("check_theorem5: m must be >= 1");
    const Vector Lambdas = waterfill::effective_eigenvalues(lambdas, m, sigma2);

    TheoremConditionReport rep;
    rep.theorem = Theorem::T5;
    rep.r = waterfill::find_r(Lambdas);
    rep.integral = true;
    rep.m_hat = 0;
    for (int k = 1; k <= rep.r - 1; ++k) {
        // The paper writes the difference with the opposite sign, which is
        // nonpositive for a descending spectrum; we take the nonnegative
        // orientation.
        const double nk = sigma2 * (1.0 / lambdas[k] - 1.0 / lambdas[k - 1]);
        const double rounded = std::round(nk);
        rep.n_raw.push_back(nk);
        rep.n_int.push_back(static_cast<long long>(rounded));
        if (std::abs(nk - rounded) >= 1e-9 || rounded < 0.0) rep.integral = false;
        rep.m_hat += static_cast<long long>(k) * static_cast<long long>(rounded);
    }
    rep.enough_blocks = (m >= rep.m_hat);
    rep.divisible = rep.enough_blocks && ((m - rep.m_hat) % rep.r == 0);
    rep.holds = rep.integral && rep.enough_blocks && rep.divisible;
    return rep;
}

} // namespace adacomp::blockfill
