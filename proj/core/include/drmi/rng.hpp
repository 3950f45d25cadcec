#pragma once

#include <array>
#include <cstdint>

namespace drmi {

// Seed material for one reproducible stream. Identical keys yield
// bit-identical draw sequences regardless of thread schedule; streams with
// different purpose tags are statistically independent.
struct StreamKey {
    std::uint64_t master = 0;
    std::uint64_t cell = 0;
    std::uint64_t replication = 0;
    std::uint64_t purpose = 0;
};

namespace purpose {
inline constexpr std::uint64_t data_generation = 1;
inline constexpr std::uint64_t missingness = 2;
inline constexpr std::uint64_t imputation = 3;

// One substream per (imputation index, stratum). Stratum 0/1 are the
// exposure arms of a stratified fit; 2 is a pooled fit.
inline constexpr std::uint64_t imputation_draw(int imputation_index, int stratum) {
    return (imputation << 56) | (static_cast<std::uint64_t>(imputation_index) << 8)
         | static_cast<std::uint64_t>(stratum);
}
} // namespace purpose

// xoshiro256++ stream whose state is derived by hashing the key through
// splitmix64 finalizers. All variates are inverse-transform draws, so each
// call consumes a fixed number of uniforms and replay is exact.
class RngStream {
public:
    RngStream(std::uint64_t master, std::uint64_t cell, std::uint64_t replication,
              std::uint64_t purpose_tag);
    explicit RngStream(const StreamKey& key);

    // New stream keyed by (construction key, tag). Independent of how many
    // draws this stream has produced.
    [[nodiscard]] RngStream fork(std::uint64_t tag) const;

    const StreamKey& key() const { return key_; }

    std::uint64_t next_u64();

    double uniform();          // [0, 1)
    double standard_normal();
    double bernoulli(double p); // returns 0.0 or 1.0
    double chi_squared(int df);

private:
    double open_uniform(); // (0, 1), for inverse CDFs

    StreamKey key_;
    std::array<std::uint64_t, 4> state_{};
};

// Named law for the generic draw entry point.
struct Law {
    enum class Kind { standard_normal, bernoulli, chi_squared, uniform };
    Kind kind = Kind::standard_normal;
    double p = 0.0; // bernoulli
    int df = 0;     // chi_squared

    static Law standard_normal() { return {Kind::standard_normal, 0.0, 0}; }
    static Law bernoulli(double p) { return {Kind::bernoulli, p, 0}; }
    static Law chi_squared(int df) { return {Kind::chi_squared, 0.0, df}; }
    static Law uniform() { return {Kind::uniform, 0.0, 0}; }
};

double draw(RngStream& stream, const Law& law);

} // namespace drmi
