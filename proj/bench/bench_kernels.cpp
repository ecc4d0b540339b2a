#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "spikecaps/kernels.hpp"
#include "spikecaps/rng.hpp"

using namespace spikecaps;
using namespace spikecaps::kernels;

namespace {

double now_ms() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double, std::milli>(
               clock::now().time_since_epoch())
        .count();
}

Tensor random_tensor(std::vector<std::size_t> shape, Rng& rng) {
    Tensor t(std::move(shape));
    for (double& v : t.data) v = rng.uniform(-1.0, 1.0);
    return t;
}

bool bitwise_equal(const Tensor& a, const Tensor& b) {
    return a.shape == b.shape &&
           std::memcmp(a.data.data(), b.data.data(),
                       a.data.size() * sizeof(double)) == 0;
}

struct Row {
    std::string name;
    double serial_ms = 0.0;
    double parallel_ms = 0.0;
    bool identical = true;
};

template <typename SerialFn, typename ParallelFn>
Row time_pair(const std::string& name, int reps, SerialFn&& s, ParallelFn&& p) {
    Row row;
    row.name = name;
    Tensor ref, par;
    double t0 = now_ms();
    for (int i = 0; i < reps; ++i) ref = s();
    row.serial_ms = (now_ms() - t0) / reps;
    t0 = now_ms();
    for (int i = 0; i < reps; ++i) par = p();
    row.parallel_ms = (now_ms() - t0) / reps;
    row.identical = bitwise_equal(ref, par);
    return row;
}

void print_row(const Row& r) {
    std::printf("%-28s %10.2f %10.2f %8.2fx   %s\n", r.name.c_str(), r.serial_ms,
                r.parallel_ms, r.serial_ms / r.parallel_ms,
                r.identical ? "bitwise-identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
    int reps = 3;
    if (argc > 1) reps = std::atoi(argv[1]);
    if (reps < 1) reps = 1;

#ifdef _OPENMP
    std::printf("OpenMP threads: %d, reps per measurement: %d\n",
                omp_get_max_threads(), reps);
#else
    std::printf("OpenMP disabled, reps per measurement: %d\n", reps);
#endif
    std::printf("%-28s %10s %10s %9s   %s\n", "kernel", "serial ms",
                "parallel ms", "speedup", "result check");

    Rng rng(7);
    // capsule-layer-sized convolution: 64ch 20x20 -> 64ch 6x6, 9x9 stride 2
    Tensor cin = random_tensor({64, 20, 20}, rng);
    Tensor ck = random_tensor({64, 64, 9, 9}, rng);
    print_row(time_pair(
        "conv2d 64x20x20 -> 64x6x6", reps,
        [&] { return serial::conv2d(cin, ck, 2); },
        [&] { return conv2d(cin, ck, 2); }));

    Tensor cout_grad = random_tensor({64, 6, 6}, rng);
    print_row(time_pair(
        "conv2d_backward (input)", reps,
        [&] { return serial::conv2d_backward(cout_grad, cin, ck, 2).grad_input; },
        [&] { return conv2d_backward(cout_grad, cin, ck, 2).grad_input; }));
    print_row(time_pair(
        "conv2d_backward (kernels)", reps,
        [&] { return serial::conv2d_backward(cout_grad, cin, ck, 2).grad_kernels; },
        [&] { return conv2d_backward(cout_grad, cin, ck, 2).grad_kernels; }));

    // spiking activity is sparse; compare the dense path with the
    // nonzero-index path on a 10%-active input
    Tensor spikes({64, 20, 20});
    for (double& v : spikes.data) v = rng.uniform01() < 0.1 ? 1.0 : 0.0;
    print_row(time_pair(
        "conv2d dense vs sparse@10%", reps,
        [&] { return serial::conv2d(spikes, ck, 2); },
        [&] { return conv2d_sparse_input(spikes, ck, 2); }));

    Tensor ma = random_tensor({256, 256}, rng);
    Tensor mb = random_tensor({256, 256}, rng);
    print_row(time_pair(
        "matmul 256x256", reps, [&] { return serial::matmul(ma, mb); },
        [&] { return matmul(ma, mb); }));

    Tensor mg = random_tensor({256, 256}, rng);
    print_row(time_pair(
        "matmul_backward (A)", reps,
        [&] { return serial::matmul_backward(mg, ma, mb).grad_a; },
        [&] { return matmul_backward(mg, ma, mb).grad_a; }));

    return 0;
}
