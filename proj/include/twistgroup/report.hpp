#pragma once

#include <cstdint>
#include <string>
#include <thread>
#include <vector>

namespace twistgroup {

/// One verification check: identity name, parameter summary, verdict, and a
/// witness (the failing parameters) when it did not pass.
struct CheckResult {
    std::string name;
    std::string params;
    bool pass = false;
    std::string witness;
};

struct Report {
    std::vector<CheckResult> checks;

    bool all_pass() const
    {
        for (const auto& c : checks)
            if (!c.pass)
                return false;
        return true;
    }

    void add(std::string name, std::string params, bool pass, std::string witness = "")
    {
        checks.push_back({std::move(name), std::move(params), pass, std::move(witness)});
    }

    void merge(const Report& o)
    {
        checks.insert(checks.end(), o.checks.begin(), o.checks.end());
    }
};

/// Mix a sample index into a seed; each sample draws from its own generator,
/// so results are independent of how samples are distributed over threads.
inline std::uint64_t per_sample_seed(std::uint64_t seed, std::uint64_t index)
{
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Run fn(i) for i in [0, count) on `threads` workers; any partition gives
/// the same observable result because samples never share state.
template <typename Fn>
void parallel_samples(std::size_t count, unsigned threads, Fn&& fn)
{
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            fn(i);
        return;
    }
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < count; i += threads)
                fn(i);
        });
    }
    for (auto& t : pool)
        t.join();
}

} // namespace twistgroup
