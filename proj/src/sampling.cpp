#include "abelian/sampling.hpp"

#include <cmath>
#include <string>

#include "abelian/errors.hpp"

namespace abelian {

std::string_view to_string(SamplingMethod method) noexcept {
    switch (method) {
    case SamplingMethod::InverseCdf: return "inverse-cdf";
    case SamplingMethod::Alias: return "alias";
    }
    return "unknown";
}

SamplingMethod parse_sampling_method(std::string_view text) {
    if (text == "inverse-cdf") return SamplingMethod::InverseCdf;
    if (text == "alias") return SamplingMethod::Alias;
    throw DomainError("unknown sampling method '" + std::string(text) + "'");
}

Sampler::Sampler(std::shared_ptr<const LogProbTable> table, std::uint64_t seed,
                 SamplingMethod method)
    : table_(std::move(table)), engine_(seed), seed_(seed), method_(method) {
    if (!table_) throw DomainError("sampler requires a table");
    if (method_ != SamplingMethod::Alias) return;

    const auto lp = table_->log_pmf();
    const std::size_t n = lp.size();
    std::vector<double> scaled(n);
    long double total = 0.0L;
    for (std::size_t i = 0; i < n; ++i) total += std::exp(static_cast<long double>(lp[i]));
    for (std::size_t i = 0; i < n; ++i) {
        scaled[i] = static_cast<double>(std::exp(static_cast<long double>(lp[i])) / total *
                                        static_cast<long double>(n));
    }

    accept_.assign(n, 1.0);
    alias_.resize(n);
    std::vector<std::size_t> small, large;
    for (std::size_t i = 0; i < n; ++i) {
        alias_[i] = static_cast<std::int64_t>(i);
        (scaled[i] < 1.0 ? small : large).push_back(i);
    }
    while (!small.empty() && !large.empty()) {
        const std::size_t s = small.back();
        small.pop_back();
        const std::size_t l = large.back();
        accept_[s] = scaled[s];
        alias_[s] = static_cast<std::int64_t>(l);
        scaled[l] = (scaled[l] + scaled[s]) - 1.0;
        if (scaled[l] < 1.0) {
            large.pop_back();
            small.push_back(l);
        }
    }
    // Leftovers are 1 up to rounding.
    for (std::size_t i : small) accept_[i] = 1.0;
    for (std::size_t i : large) accept_[i] = 1.0;
}

double Sampler::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::int64_t Sampler::draw() {
    if (method_ == SamplingMethod::InverseCdf) return quantile(*table_, uniform());

    const auto n = static_cast<unsigned __int128>(accept_.size());
    const auto column = static_cast<std::size_t>((static_cast<unsigned __int128>(engine_()) * n) >> 64);
    const std::int64_t picked =
        uniform() < accept_[column] ? static_cast<std::int64_t>(column) : alias_[column];
    return picked + 1;
}

std::vector<std::int64_t> Sampler::draw_batch(std::size_t count) {
    std::vector<std::int64_t> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(draw());
    return out;
}

Sampler new_sampler(const AbelianParams& params, std::uint64_t seed, SamplingMethod method) {
    return Sampler(std::make_shared<const LogProbTable>(build_table(params)), seed, method);
}

} // namespace abelian
