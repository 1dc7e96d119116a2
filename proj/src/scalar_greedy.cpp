#include "adacomp/scalar_greedy.hpp"

#include "adacomp/errors.hpp"

#include <algorithm>
#include <cmath>

namespace adacomp::scalar_greedy {

std::vector<std::pair<double, int>> ScalarSensingState::sorted_spectrum() const {
    std::vector<std::pair<double, int>> view;
    view.reserve(static_cast<std::size_t>(lambdas_.size()));
    for (int i = 0; i < lambdas_.size(); ++i) view.emplace_back(lambdas_[i], i);
    std::stable_sort(view.begin(), view.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    return view;
}

ScalarSensingState init_state(const GaussianSignalModel& model) {
    if (!model.is_scalar_specialization())
        throw SpecializationError(
            "scalar greedy requires L = 1, Rnn = sigma_n^2 I_K and scalar Rww");

    ScalarSensingState s;
    s.model_ = model;
    s.sigma_n2_ = model.sigma_n2();
    s.sigma_w2_ = model.sigma_w2();
    s.sigma2_ = s.sigma_n2_ + s.sigma_w2_;

    const Matrix D0 = linalg::symmetrize(model.H() * model.P0() * model.H().transpose());
    auto eig = linalg::eig_sym(D0); // descending, sign-fixed
    // D0 is PSD with rank N; directions beyond N carry exact zeros.
    const double lmax = std::max(eig.values.maxCoeff(), 0.0);
    for (int i = 0; i < eig.values.size(); ++i) {
        if (eig.values[i] < -1e-10 * std::max(lmax, 1.0))
            throw DomainError("D0 = H P0 H^T has a significantly negative eigenvalue");
        if (eig.values[i] < 1e-12 * std::max(lmax, 1.0)) eig.values[i] = 0.0;
    }
    s.V_ = std::move(eig.V);
    s.lambdas_ = std::move(eig.values);
    return s;
}

GreedyStep greedy_step(const ScalarSensingState& state) {
    const Vector& lam = state.lambdas_;
    const double lmax = lam.maxCoeff();
    if (lmax <= 0.0)
        throw DegenerateError("all eigenvalues are zero; no informative direction remains");

    // Smallest original index among values tied with the max.
    const double tol = 1e-10 * lmax;
    int pick = 0;
    while (lam[pick] < lmax - tol) ++pick;

    GreedyStep out;
    out.picked_index = pick;
    out.a = state.V_.col(pick);
    out.gain = 0.5 * std::log1p(lam[pick] / state.sigma2_);
    out.next = state;
    out.next.lambdas_[pick] = 1.0 / (1.0 / lam[pick] + 1.0 / state.sigma2_);
    out.next.step_ = state.step_ + 1;
    out.next.picks_.push_back(pick);
    return out;
}

PolicyTrace greedy_run(const ScalarSensingState& state, int m) {
    if (m < 0) throw DomainError("greedy_run: horizon must be nonnegative");

    ScalarSensingState cur = state;
    PolicyTrace trace;
    PosteriorState post = initial_state(state.model());
    for (int k = 0; k < m; ++k) {
        GreedyStep step = greedy_step(cur);
        const Compressor choice = Compressor::vector(step.a);
        PosteriorState next = posterior_update(post, choice, state.model());
        trace.choices.push_back(choice);
        trace.stage_gains.push_back(post.entropy - next.entropy);
        post = std::move(next);
        cur = std::move(step.next);
    }
    trace.net_gain = 0.0;
    for (double g : trace.stage_gains) trace.net_gain += g;
    trace.final_posterior = std::move(post);
    return trace;
}

double snr_ratio(const ScalarSensingState& state, const Vector& a) {
    if (a.size() != state.V().rows())
        throw ConformanceError("snr_ratio: vector length does not match channel dimension K");
    const double norm2 = a.squaredNorm();
    if (norm2 == 0.0) throw DomainError("snr_ratio: zero vector");

    // a^T D a through the spectral expansion in the fixed basis.
    const Vector coeffs = state.V().transpose() * a;
    double quad = 0.0;
    for (int i = 0; i < coeffs.size(); ++i)
        quad += state.lambdas_by_index()[i] * coeffs[i] * coeffs[i];
    return quad / (state.sigma_n2() * norm2 + state.sigma_w2());
}

} // namespace adacomp::scalar_greedy
