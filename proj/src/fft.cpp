#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

#include "msf/error.hpp"

namespace msf::detail {
namespace {

// Plans are created once per (n, batch, sign) and reused. FFTW's planner is
// not reentrant; execution with the new-array interface is.
class PlanCache {
public:
    ~PlanCache()
    {
        for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
    }

    fftw_plan get(int n, int batch, int sign)
    {
        std::lock_guard lock(mutex_);
        const auto key = std::make_tuple(n, batch, sign);
        if (auto it = plans_.find(key); it != plans_.end()) return it->second;

        std::vector<std::complex<double>> scratch(static_cast<std::size_t>(n) * batch);
        auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
        int len = n;
        fftw_plan plan = fftw_plan_many_dft(1, &len, batch, buf, nullptr, batch, 1, buf, nullptr,
                                            batch, 1, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (plan == nullptr) throw Error(ErrorCode::InvalidArgument, "FFTW could not plan transform");
        plans_.emplace(key, plan);
        return plan;
    }

private:
    std::mutex mutex_;
    std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

PlanCache& cache()
{
    static PlanCache instance;
    return instance;
}

}  // namespace

void transform_inplace(std::span<std::complex<double>> data, int n, int batch, Transform kind)
{
    if (n <= 0 || batch <= 0 || data.size() != static_cast<std::size_t>(n) * batch)
        throw Error(ErrorCode::InvalidArgument, "transform buffer does not match n * batch");
    const int sign = kind == Transform::Synthesis ? FFTW_BACKWARD : FFTW_FORWARD;
    fftw_plan plan = cache().get(n, batch, sign);
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(plan, buf, buf);
    if (kind == Transform::Analysis) {
        const double scale = 1.0 / n;
        for (auto& v : data) v *= scale;
    }
}

}  // namespace msf::detail
