// Wall-clock comparison of the OpenMP kernels against their serial references.
#include <chrono>
#include <cstdio>
#include <functional>

#include "subsetcodec/exec.hpp"
#include "subsetcodec/kolmo.hpp"
#include "subsetcodec/lemmas.hpp"

using namespace subsetcodec;

namespace {

double seconds(const std::function<void()>& fn) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

template <class F>
void compare(const char* name, F kernel) {
    decltype(kernel(Exec::serial)) serial_result, parallel_result;
    const double ts = seconds([&] { serial_result = kernel(Exec::serial); });
    const double tp = seconds([&] { parallel_result = kernel(Exec::parallel); });
    std::printf("%-28s serial %8.3f s  parallel %8.3f s  speedup %5.2fx  %s\n", name, ts, tp, ts / tp,
                serial_result == parallel_result ? "same result" : "RESULTS DIFFER");
}

}  // namespace

int main() {
    std::printf("threads: %d\n", max_threads());
    compare("variance n=8 k=4 delta=1/4", [](Exec e) { return exhaustive_variance(8, 4, Rational(1, 4), e); });
    compare("variance random n=64 1e5", [](Exec e) { return random_variance(64, 100000, 0, e); });
    compare("partition n=12 k=3", [](Exec e) { return exhaustive_partition(12, 3, e); });
    compare("counting max(s)<=12 k<=6", [](Exec e) { return counting_bound_sweep(12, 6, e); });
    compare("complexity table max(s)=16", [](Exec e) {
        return complexity_table(FinitePrefixSet::from_members(17, {1, 4, 9, 16}), 17, e);
    });
    compare("c_finite 0110 max(s)=16", [](Exec e) {
        return c_finite(FinitePrefixSet::from_members(17, {0, 16}), Bitstring::parse("0110"), e);
    });
    return 0;
}
