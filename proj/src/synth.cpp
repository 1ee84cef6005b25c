#include "ducba/synth.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "ducba/rng.hpp"

namespace ducba {

namespace {

// Class-conditional generators, shaped so the mined rule structure behaves
// like the real table: hypertensive records are recognizable from a few
// strong independent markers (exertion angina, chest pain type, ST
// depression, heart-rate reserve), while the healthy profile is mostly a
// *consistent* resting picture: ECG, ST slope, perfusion and fluoroscopy
// findings that agree with each other. Randomized response noise therefore
// erodes the healthy-class rules much faster than the hypertensive ones.

int sample_level(const double* probs, size_t k, Rng& rng) {
    double u = rng.unit();
    double acc = 0.0;
    for (size_t i = 0; i + 1 < k; ++i) {
        acc += probs[i];
        if (u < acc) return static_cast<int>(i);
    }
    return static_cast<int>(k) - 1;
}

double sample_normal(double mean, double sd, Rng& rng) {
    double u1 = 1.0 - rng.unit();
    double u2 = rng.unit();
    return mean + sd * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

// Copy the latent level with the given fidelity, otherwise fall uniformly
// on one of the other levels.
int noisy_copy(int z, double fidelity, int k, Rng& rng) {
    if (rng.unit() < fidelity) return z;
    int other = static_cast<int>(rng.below(static_cast<uint64_t>(k - 1)));
    return other >= z ? other + 1 : other;
}

}  // namespace

std::string synthesize_csv(const SynthSpec& spec) {
    size_t n = spec.positive_count + spec.negative_count;
    if (n == 0) throw std::invalid_argument("empty synthetic spec");

    Rng rng = Rng::stream(spec.seed, {stream_tag::synth});

    std::vector<uint8_t> target(n, 0);
    for (size_t i = 0; i < spec.positive_count; ++i) target[i] = 1;
    rng.shuffle(target);

    std::ostringstream out;
    out << "age,sex,cp,trestbps,chol,fbs,restecg,thalach,exang,oldpeak,slope,ca,thal,target\n";

    static const double cp_pos[4] = {0.08, 0.18, 0.30, 0.44};
    static const double cp_neg[4] = {0.28, 0.30, 0.25, 0.17};
    static const double fbs_pos[2] = {0.68, 0.32};
    static const double fbs_neg[2] = {0.74, 0.26};
    static const double exang_pos[2] = {0.44, 0.56};
    static const double exang_neg[2] = {0.82, 0.18};
    static const double restecg_pos[3] = {0.26, 0.46, 0.28};
    static const double slope_pos[3] = {0.25, 0.45, 0.30};
    static const double thal_pos[3] = {0.20, 0.33, 0.47};
    static const double ca_pos[4] = {0.22, 0.30, 0.28, 0.20};
    static const double latent_neg[3] = {0.40, 0.35, 0.25};

    char buf[96];
    for (size_t r = 0; r < n; ++r) {
        bool pos = target[r] == 1;

        // age and sex carry no signal; the chi-square screen should drop them.
        int age = 29 + static_cast<int>(rng.below(49));  // 29..77
        int sex = static_cast<int>(rng.below(2));

        int cp, fbs, restecg, exang, slope, ca, thal;
        double trestbps, chol, oldpeak, ratio;

        if (pos) {
            cp = sample_level(cp_pos, 4, rng);
            fbs = sample_level(fbs_pos, 2, rng);
            exang = sample_level(exang_pos, 2, rng);
            restecg = sample_level(restecg_pos, 3, rng);
            slope = sample_level(slope_pos, 3, rng);
            thal = sample_level(thal_pos, 3, rng);
            ca = sample_level(ca_pos, 4, rng);
            // A minority of hypertensive records presents with unremarkable
            // vitals, which keeps the low-end bins from being pure markers
            // of the healthy class.
            trestbps = rng.unit() < 0.15 ? sample_normal(124.0, 10.0, rng)
                                         : sample_normal(142.0, 13.0, rng);
            chol = sample_normal(256.0, 45.0, rng);
            oldpeak = rng.unit() < 0.13 ? sample_normal(0.5, 0.3, rng)
                                        : sample_normal(1.9, 0.55, rng);
            ratio = rng.unit() < 0.13 ? sample_normal(0.86, 0.05, rng)
                                      : sample_normal(0.695, 0.065, rng);
        } else {
            // Healthy resting picture: one latent severity level drives the
            // ECG/slope/perfusion/fluoroscopy findings jointly.
            int z = sample_level(latent_neg, 3, rng);
            restecg = noisy_copy(z, 0.95, 3, rng);
            slope = noisy_copy(z, 0.95, 3, rng);
            thal = noisy_copy(z, 0.93, 3, rng);
            ca = rng.unit() < 0.10 ? 3 : noisy_copy(z, 0.95, 3, rng);
            cp = sample_level(cp_neg, 4, rng);
            fbs = sample_level(fbs_neg, 2, rng);
            exang = sample_level(exang_neg, 2, rng);
            trestbps = sample_normal(125.0, 12.0, rng);
            chol = sample_normal(226.0, 38.0, rng);
            oldpeak = sample_normal(0.60, 0.45, rng);
            ratio = sample_normal(0.85, 0.08, rng);
        }

        trestbps = std::max(80.0, trestbps);
        chol = std::max(100.0, chol);
        oldpeak = std::max(0.0, oldpeak);

        // Max heart rate declines with age; the class signal lives in the
        // ratio to (220 - age).
        double thalach = std::max(60.0, ratio * (220.0 - age));

        std::snprintf(buf, sizeof(buf), "%d,%d,%d,%.1f,%.1f,%d,%d,%.1f,%d,%.2f,%d,%d,%d,%d\n",
                      age, sex, cp, trestbps, chol, fbs, restecg, thalach, exang, oldpeak,
                      slope, ca, thal + 1, target[r]);
        out << buf;
    }
    return out.str();
}

void write_synthetic_csv(const std::string& path, const SynthSpec& spec) {
    std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << synthesize_csv(spec);
}

}  // namespace ducba
