#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string_view>
#include <vector>

#include "abelian/distribution.hpp"

namespace abelian {

enum class SamplingMethod { InverseCdf, Alias };

std::string_view to_string(SamplingMethod method) noexcept;
/// Accepts "inverse-cdf" and "alias"; DomainError otherwise.
SamplingMethod parse_sampling_method(std::string_view text);

/// Generator behind every Sampler; reported in tool output metadata.
using SamplerEngine = std::mt19937_64;
inline constexpr std::string_view kGeneratorName = "mt19937_64";

/// Seeded draws from a LogProbTable. Single-threaded: move it, don't share
/// it. Same seed, params and method reproduce the stream exactly.
class Sampler {
public:
    Sampler(std::shared_ptr<const LogProbTable> table, std::uint64_t seed,
            SamplingMethod method = SamplingMethod::InverseCdf);

    std::int64_t draw();
    std::vector<std::int64_t> draw_batch(std::size_t count);

    const LogProbTable& table() const noexcept { return *table_; }
    SamplingMethod method() const noexcept { return method_; }
    std::uint64_t seed() const noexcept { return seed_; }

private:
    double uniform();

    std::shared_ptr<const LogProbTable> table_;
    SamplerEngine engine_;
    std::uint64_t seed_;
    SamplingMethod method_;
    // Vose alias tables, populated only for SamplingMethod::Alias.
    std::vector<double> accept_;
    std::vector<std::int64_t> alias_;
};

/// Builds the table (CapacityError propagates) and wraps it in a Sampler.
Sampler new_sampler(const AbelianParams& params, std::uint64_t seed,
                    SamplingMethod method = SamplingMethod::InverseCdf);

} // namespace abelian
