#include "drmi/rng.hpp"

#include "drmi/errors.hpp"

#include <boost/math/distributions/gamma.hpp>
#include <boost/math/distributions/normal.hpp>

#include <bit>
#include <cmath>

namespace drmi {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

// splitmix64 finalizer (Vigna / Steele-Lea-Flood).
constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t splitmix_next(std::uint64_t& s) {
    s += kGolden;
    return mix64(s);
}

std::array<std::uint64_t, 4> seed_state(const StreamKey& key) {
    // Chain the key words so permuted keys do not collide, then expand
    // into 256 bits of state with a splitmix64 sequence.
    std::uint64_t h = mix64(key.master + kGolden);
    h = mix64(h ^ (key.cell + 0xA24BAED4963EE407ULL));
    h = mix64(h ^ (key.replication + 0x9FB21C651E98DF25ULL));
    h = mix64(h ^ (key.purpose + 0xC2B2AE3D27D4EB4FULL));

    std::array<std::uint64_t, 4> s{};
    for (auto& w : s) w = splitmix_next(h);
    if ((s[0] | s[1] | s[2] | s[3]) == 0) s[0] = 1; // all-zero state is invalid
    return s;
}

} // namespace

RngStream::RngStream(std::uint64_t master, std::uint64_t cell, std::uint64_t replication,
                     std::uint64_t purpose_tag)
    : RngStream(StreamKey{master, cell, replication, purpose_tag}) {}

RngStream::RngStream(const StreamKey& key) : key_(key), state_(seed_state(key)) {}

RngStream RngStream::fork(std::uint64_t tag) const {
    StreamKey k = key_;
    k.purpose = mix64(k.purpose ^ (tag + kGolden));
    return RngStream(k);
}

std::uint64_t RngStream::next_u64() {
    const std::uint64_t result = std::rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = std::rotl(state_[3], 45);
    return result;
}

double RngStream::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::open_uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::standard_normal() {
    static const boost::math::normal_distribution<double> unit_normal(0.0, 1.0);
    return boost::math::quantile(unit_normal, open_uniform());
}

double RngStream::bernoulli(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw ArgumentError("bernoulli: p must lie in [0, 1]");
    }
    return uniform() < p ? 1.0 : 0.0;
}

double RngStream::chi_squared(int df) {
    if (df < 1) {
        throw ArgumentError("chi_squared: df must be >= 1");
    }
    // chi^2(df) = Gamma(df/2, scale 2); inverse-transform keeps the draw
    // count at exactly one uniform.
    const boost::math::gamma_distribution<double> g(0.5 * df, 2.0);
    return boost::math::quantile(g, open_uniform());
}

double draw(RngStream& stream, const Law& law) {
    switch (law.kind) {
        case Law::Kind::standard_normal: return stream.standard_normal();
        case Law::Kind::bernoulli: return stream.bernoulli(law.p);
        case Law::Kind::chi_squared: return stream.chi_squared(law.df);
        case Law::Kind::uniform: return stream.uniform();
    }
    throw ArgumentError("draw: unknown law");
}

} // namespace drmi
