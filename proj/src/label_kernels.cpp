#include "structlabel/label_kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "kernels_impl.hpp"

namespace structlabel {

namespace {

bool g_force_scalar = false;

bool avx2_available() {
#if defined(__x86_64__)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

void check_same_shape(const BitSignal& a, const BitSignal& b, const char* what) {
    if (a.n != b.n || a.m != b.m) throw std::invalid_argument(std::string(what) + ": shape mismatch");
}

double clamp_prob(double p) { return std::min(std::max(p, 1e-12), 1.0 - 1e-12); }

// Binary cross-entropy of a score against a {0,1} target.
double bce(double score, int target) {
    const double p = clamp_prob(score);
    return target ? -std::log(p) : -std::log(1.0 - p);
}

}  // namespace

KernelBackend active_backend() {
    if (!g_force_scalar && avx2_available()) return KernelBackend::Avx2;
    return KernelBackend::Scalar;
}

void force_scalar_backend(bool on) { g_force_scalar = on; }

void axpby(double a, const double* x, double b, const double* y, double* out, std::size_t n) {
#if defined(__x86_64__)
    if (active_backend() == KernelBackend::Avx2) {
        detail::axpby_avx2(a, x, b, y, out, n);
        return;
    }
#endif
    detail::axpby_scalar(a, x, b, y, out, n);
}

double sum_sq_diff(const double* x, const double* y, std::size_t n) {
#if defined(__x86_64__)
    if (active_backend() == KernelBackend::Avx2) return detail::sum_sq_diff_avx2(x, y, n);
#endif
    return detail::sum_sq_diff_scalar(x, y, n);
}

double NoiseSchedule::abar(int t) const {
    if (t < 0 || t > T) throw std::out_of_range("NoiseSchedule::abar: t out of [0, T]");
    return alpha_bar[t];
}

NoiseSchedule build_schedule(int T, double beta_start, double beta_end) {
    if (T < 1) throw std::invalid_argument("build_schedule: T must be >= 1");
    if (!(0.0 < beta_start && beta_start < 1.0) || !(0.0 < beta_end && beta_end < 1.0) ||
        (T > 1 && !(beta_start < beta_end)))
        throw std::invalid_argument("build_schedule: need 0 < beta_start < beta_end < 1");
    NoiseSchedule s;
    s.T = T;
    s.alpha_bar.assign(T + 1, 1.0);
    for (int t = 1; t <= T; ++t) {
        const double beta =
            T == 1 ? beta_start : beta_start + (t - 1) * (beta_end - beta_start) / (T - 1);
        s.beta.push_back(beta);
        s.alpha_bar[t] = s.alpha_bar[t - 1] * (1.0 - beta);
    }
    return s;
}

int bit_width(int label_count) {
    if (label_count < 2) return 1;
    int m = 0;
    while ((1 << m) < label_count) ++m;
    return m;
}

BitSignal tag2bit(const std::vector<int>& ids, int label_count) {
    const int m = bit_width(label_count);
    BitSignal out(static_cast<int>(ids.size()), m);
    for (int i = 0; i < out.n; ++i) {
        const int id = ids[i];
        if (id < 0 || id >= label_count) throw std::out_of_range("tag2bit: id out of range");
        for (int j = 0; j < m; ++j)
            out.at(i, j) = ((id >> (m - 1 - j)) & 1) ? 1.0 : -1.0;
    }
    return out;
}

std::vector<int> bit2tag(const BitSignal& signal, int label_count, int fallback) {
    std::vector<int> ids(signal.n, fallback);
    for (int i = 0; i < signal.n; ++i) {
        int id = 0;
        for (int j = 0; j < signal.m; ++j) id = (id << 1) | (signal.at(i, j) > 0.0 ? 1 : 0);
        ids[i] = id < label_count ? id : fallback;
    }
    return ids;
}

BitSignal forward_latent(const BitSignal& x0, int t, const BitSignal& e,
                         const NoiseSchedule& sched) {
    check_same_shape(x0, e, "forward_latent");
    if (t < 1 || t > sched.T) throw std::out_of_range("forward_latent: t out of [1, T]");
    const double ab = sched.abar(t);
    BitSignal out(x0.n, x0.m);
    axpby(std::sqrt(ab), x0.v.data(), std::sqrt(1.0 - ab), e.v.data(), out.v.data(), out.v.size());
    return out;
}

BitSignal ddim_step(const BitSignal& x_t, int t, int k, const BitSignal& e_hat, const BitSignal& z,
                    const NoiseSchedule& sched) {
    check_same_shape(x_t, e_hat, "ddim_step");
    check_same_shape(x_t, z, "ddim_step");
    if (t < 1 || t > sched.T) throw std::out_of_range("ddim_step: t out of [1, T]");
    if (k < 0 || k >= t) throw std::invalid_argument("ddim_step: need 0 <= k < t");
    const double ab_t = sched.abar(t), ab_k = sched.abar(k);
    BitSignal mean(x_t.n, x_t.m);
    axpby(1.0, x_t.v.data(), -std::sqrt(1.0 - ab_t), e_hat.v.data(), mean.v.data(),
          mean.v.size());
    BitSignal out(x_t.n, x_t.m);
    axpby(std::sqrt(ab_k) / std::sqrt(ab_t), mean.v.data(), std::sqrt(1.0 - ab_k), z.v.data(),
          out.v.data(), out.v.size());
    return out;
}

BitSignal denoise_loop(const std::function<BitSignal(const BitSignal&, int)>& predict,
                       const NoiseSchedule& sched, int s, const BitSignal& x_T,
                       const std::function<double()>& noise) {
    if (s < 1) throw std::invalid_argument("denoise_loop: s must be >= 1");
    BitSignal x = x_T;
    int t = sched.T;
    while (t > 0) {
        BitSignal e_hat = predict(x, t);
        check_same_shape(x, e_hat, "denoise_loop");
        const int k = std::max(t - s, 0);
        BitSignal z(x.n, x.m);
        if (k > 0)
            for (double& v : z.v) v = noise();
        x = ddim_step(x, t, k, e_hat, z, sched);
        t = k;
    }
    return x;
}

double mse_noise_loss(const BitSignal& e, const BitSignal& e_hat) {
    check_same_shape(e, e_hat, "mse_noise_loss");
    if (e.v.empty()) return 0.0;
    return sum_sq_diff(e.v.data(), e_hat.v.data(), e.v.size()) / static_cast<double>(e.v.size());
}

std::vector<double> gumbel_softmax(const std::vector<double>& row, double tau,
                                   const std::vector<double>& g) {
    if (tau <= 0.0) throw std::invalid_argument("gumbel_softmax: tau must be positive");
    if (row.size() != g.size()) throw std::invalid_argument("gumbel_softmax: shape mismatch");
    std::vector<double> logits(row.size());
    for (size_t i = 0; i < row.size(); ++i) logits[i] = (std::log(row[i] + 1e-10) + g[i]) / tau;
    const double mx = *std::max_element(logits.begin(), logits.end());
    double sum = 0.0;
    for (double& l : logits) {
        l = std::exp(l - mx);
        sum += l;
    }
    for (double& l : logits) l /= sum;
    return logits;
}

std::vector<int> disc_target(const std::vector<std::vector<double>>& pred,
                             const std::vector<int>& gold) {
    if (pred.size() != gold.size()) throw std::invalid_argument("disc_target: shape mismatch");
    std::vector<int> s(pred.size(), 0);
    for (size_t i = 0; i < pred.size(); ++i) {
        int arg = 0;
        for (size_t j = 1; j < pred[i].size(); ++j)
            if (pred[i][j] > pred[i][arg]) arg = static_cast<int>(j);
        s[i] = (arg == gold[i]) ? 1 : 0;
    }
    return s;
}

AdversarialLosses adversarial_losses(const AdversarialBatch& batch) {
    const size_t n = batch.pred.size();
    if (batch.gold.size() != n || batch.d_real.size() != n || batch.d_fake.size() != n)
        throw std::invalid_argument("adversarial_losses: shape mismatch");
    for (double d : batch.d_real)
        if (d < 0.0 || d > 1.0) throw std::invalid_argument("adversarial_losses: score not in [0, 1]");
    for (double d : batch.d_fake)
        if (d < 0.0 || d > 1.0) throw std::invalid_argument("adversarial_losses: score not in [0, 1]");

    AdversarialLosses out;
    if (n == 0) return out;
    std::vector<int> s = disc_target(batch.pred, batch.gold);
    for (size_t i = 0; i < n; ++i) {
        const int gold = batch.gold[i];
        if (gold < 0 || gold >= static_cast<int>(batch.pred[i].size()))
            throw std::out_of_range("adversarial_losses: gold id out of range");
        out.l_dp += bce(batch.d_real[i], 1);
        out.l_dg += bce(batch.d_fake[i], s[i]);
        out.l_a += bce(batch.d_fake[i], 1);
        out.l_tag += -std::log(clamp_prob(batch.pred[i][gold]));
    }
    const double dn = static_cast<double>(n);
    out.l_dp /= dn;
    out.l_dg /= dn;
    out.l_a /= dn;
    out.l_tag /= dn;
    out.l_g = out.l_tag + batch.lambda * out.l_a;
    out.l_d = out.l_dp + out.l_dg;
    return out;
}

}  // namespace structlabel
