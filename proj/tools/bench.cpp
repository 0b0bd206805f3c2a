// Times the OpenMP kernels against their serial references on synthetic
// layers and checks that both produce identical bytes.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>

#include "centprune/baselines.hpp"
#include "centprune/centrality.hpp"
#include "centprune/representatives.hpp"
#include "centprune/similarity.hpp"

namespace {

using namespace centprune;
using Clock = std::chrono::steady_clock;

FilterSet random_layer(int n, int kh, int kw, int c, unsigned seed) {
    FilterSet fs;
    fs.n = n;
    fs.kh = kh;
    fs.kw = kw;
    fs.c = c;
    fs.data.resize(static_cast<std::size_t>(n) * kh * kw * c);
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (double& x : fs.data) x = dist(rng);
    return fs;
}

template <typename F>
double time_ms(F&& fn) {
    const auto start = Clock::now();
    fn();
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

bool same_scores(const ScoreVector& a, const ScoreVector& b) {
    return a.scores.size() == b.scores.size() &&
           std::memcmp(a.scores.data(), b.scores.data(), a.scores.size() * sizeof(double)) == 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Serial vs OpenMP kernel benchmark"};
    int n = 256;
    int channels = 32;
    int threads = 0;
    app.add_option("--n", n, "filters per synthetic layer");
    app.add_option("--channels", channels, "channels per filter");
    app.add_option("--threads", threads, "OpenMP thread count (0 = default)");
    CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
    std::printf("openmp: yes, max threads %d\n", omp_get_max_threads());
#else
    std::printf("openmp: no (serial build)\n");
#endif
    std::printf("layer: n=%d, 3x3x%d filters\n\n", n, channels);
    std::printf("%-16s %12s %12s %9s %7s\n", "kernel", "serial (ms)", "openmp (ms)", "speedup", "match");

    const FilterSet fs = random_layer(n, 3, 3, channels, 1234);

    std::vector<Representative> reps_serial, reps_omp;
    const double t_rep_s = time_ms([&] { reps_serial = serial::make_representatives(fs); });
    const double t_rep_p = time_ms([&] { reps_omp = make_representatives(fs); });
    bool rep_match = reps_serial.size() == reps_omp.size();
    for (std::size_t i = 0; rep_match && i < reps_serial.size(); ++i)
        rep_match = reps_serial[i].is_zero == reps_omp[i].is_zero &&
                    std::memcmp(reps_serial[i].vector.data(), reps_omp[i].vector.data(),
                                reps_serial[i].vector.size() * sizeof(double)) == 0;
    std::printf("%-16s %12.2f %12.2f %8.2fx %7s\n", "representatives", t_rep_s, t_rep_p,
                t_rep_s / t_rep_p, rep_match ? "yes" : "NO");

    SimilarityMatrix w_serial, w_omp;
    const double t_sim_s = time_ms([&] { w_serial = serial::similarity_matrix(reps_serial); });
    const double t_sim_p = time_ms([&] { w_omp = similarity_matrix(reps_omp); });
    const bool sim_match =
        std::memcmp(w_serial.w.data(), w_omp.w.data(), w_serial.w.size() * sizeof(double)) == 0;
    std::printf("%-16s %12.2f %12.2f %8.2fx %7s\n", "similarity", t_sim_s, t_sim_p,
                t_sim_s / t_sim_p, sim_match ? "yes" : "NO");

    const DistanceMatrix d = to_distance(w_omp);
    ScoreVector bc_serial, bc_omp;
    const double t_bc_s = time_ms([&] { bc_serial = serial::bc_scores(d); });
    const double t_bc_p = time_ms([&] { bc_omp = bc_scores(d); });
    std::printf("%-16s %12.2f %12.2f %8.2fx %7s\n", "betweenness", t_bc_s, t_bc_p, t_bc_s / t_bc_p,
                same_scores(bc_serial, bc_omp) ? "yes" : "NO");

    ScoreVector gm_serial, gm_omp;
    const double t_gm_s = time_ms([&] { gm_serial = serial::gm_scores(fs); });
    const double t_gm_p = time_ms([&] { gm_omp = gm_scores(fs); });
    std::printf("%-16s %12.2f %12.2f %8.2fx %7s\n", "gm distances", t_gm_s, t_gm_p, t_gm_s / t_gm_p,
                same_scores(gm_serial, gm_omp) ? "yes" : "NO");

    const bool all_match = rep_match && sim_match && same_scores(bc_serial, bc_omp) &&
                           same_scores(gm_serial, gm_omp);
    if (!all_match) {
        std::printf("\nserial and openmp kernels disagree\n");
        return 1;
    }
    return 0;
}
