#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace structlabel {

// Elementwise numeric kernels behind the diffusion math.  A scalar reference
// implementation always exists; on x86-64 an AVX2 variant is picked at
// runtime.  AVX2 uses separate multiply and add (no FMA), so elementwise
// results are bitwise equal to scalar; reductions may differ by rounding
// order only.
enum class KernelBackend { Scalar, Avx2 };

KernelBackend active_backend();
void force_scalar_backend(bool on);

// out[i] = a*x[i] + b*y[i]
void axpby(double a, const double* x, double b, const double* y, double* out, std::size_t n);
// sum_i (x[i] - y[i])^2
double sum_sq_diff(const double* x, const double* y, std::size_t n);

// beta is linear in t; alpha_bar[t] = prod_{s<=t} (1 - beta_s), alpha_bar[0] = 1.
struct NoiseSchedule {
    int T = 0;
    std::vector<double> beta;       // beta[t-1], t in 1..T
    std::vector<double> alpha_bar;  // alpha_bar[t], t in 0..T
    double abar(int t) const;
};

NoiseSchedule build_schedule(int T, double beta_start, double beta_end);

// n tokens by m bits, row-major; clean signals live in {-1, +1}.
struct BitSignal {
    int n = 0, m = 0;
    std::vector<double> v;

    BitSignal() = default;
    BitSignal(int n_, int m_) : n(n_), m(m_), v(static_cast<std::size_t>(n_) * m_, 0.0) {}
    double& at(int i, int j) { return v[static_cast<std::size_t>(i) * m + j]; }
    double at(int i, int j) const { return v[static_cast<std::size_t>(i) * m + j]; }
};

// ceil(log2(label_count)), at least 1.
int bit_width(int label_count);

// Big-endian binary codewords mapped 0 -> -1, 1 -> +1.  bit2tag thresholds
// at 0; reassembled ids >= label_count fall back to the given id.
BitSignal tag2bit(const std::vector<int>& ids, int label_count);
std::vector<int> bit2tag(const BitSignal& signal, int label_count, int fallback);

// x_t = sqrt(abar_t) x0 + sqrt(1 - abar_t) e
BitSignal forward_latent(const BitSignal& x0, int t, const BitSignal& e, const NoiseSchedule& sched);

// x_k = sqrt(abar_k)/sqrt(abar_t) (x_t - sqrt(1-abar_t) e_hat) + sqrt(1-abar_k) z
BitSignal ddim_step(const BitSignal& x_t, int t, int k, const BitSignal& e_hat, const BitSignal& z,
                    const NoiseSchedule& sched);

// DDIM loop from x_T down to 0 with skip s; z entries drawn from noise()
// except at the final step.  Returns the denoised signal.
BitSignal denoise_loop(const std::function<BitSignal(const BitSignal&, int)>& predict,
                       const NoiseSchedule& sched, int s, const BitSignal& x_T,
                       const std::function<double()>& noise);

// Mean squared entrywise difference.
double mse_noise_loss(const BitSignal& e, const BitSignal& e_hat);

// softmax((log(p + 1e-10) + g) / tau)
std::vector<double> gumbel_softmax(const std::vector<double>& row, double tau,
                                   const std::vector<double>& g);

// s_i = 1 iff argmax(pred_i) == gold_i; ties break toward the lowest index.
std::vector<int> disc_target(const std::vector<std::vector<double>>& pred,
                             const std::vector<int>& gold);

struct AdversarialBatch {
    std::vector<std::vector<double>> pred;  // generator rows, each sums to 1
    std::vector<int> gold;
    std::vector<std::vector<double>> gold_relaxed;  // optional, unchecked passthrough
    std::vector<double> d_real, d_fake;             // discriminator scores in [0, 1]
    double lambda = 0.0;
};

struct AdversarialLosses {
    double l_g = 0, l_d = 0, l_a = 0, l_tag = 0, l_dp = 0, l_dg = 0;
};

// l_dp = H(d_real, 1), l_dg = H(d_fake, disc_target), l_a = H(d_fake, 1),
// l_tag = H(pred, gold), l_g = l_tag + lambda*l_a, l_d = l_dp + l_dg.
// H on scores is binary cross-entropy clamped at 1e-12; on rows, categorical.
AdversarialLosses adversarial_losses(const AdversarialBatch& batch);

}  // namespace structlabel
