#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace rwb {

// Counter-based generator: output j of stream (seed, stream_id) is a mix of
// the counter, so independent substreams come from key splitting and replays
// are position-addressable.
class CounterRng {
  public:
    explicit CounterRng(uint64_t seed, uint64_t stream = 0)
        : key_(mix(seed ^ 0x9E3779B97F4A7C15ULL) ^ mix(stream * 0xBF58476D1CE4E5B9ULL + 0x94D049BB133111EBULL)),
          counter_(0) {}

    uint64_t next_u64() { return mix(key_ ^ (0x9E3779B97F4A7C15ULL * ++counter_)); }

    // derived independent substream
    CounterRng split(uint64_t stream_id) const {
        CounterRng r(0);
        r.key_ = mix(key_ ^ mix(stream_id + 0x165667B19E3779F9ULL));
        r.counter_ = 0;
        return r;
    }

    double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }  // [0,1)

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    uint64_t below(uint64_t n) {  // unbiased integer in [0, n)
        uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        uint64_t v;
        do {
            v = next_u64();
        } while (v >= limit);
        return v % n;
    }

    uint8_t bit() { return uint8_t(next_u64() >> 63); }

    // standard normal by ratio of uniforms (Leva's bounding curves)
    double gaussian() {
        for (;;) {
            double u = uniform();
            if (u <= 0.0) continue;
            double v = 1.7156 * (uniform() - 0.5);
            double x = u - 0.449871;
            double y = std::fabs(v) + 0.386595;
            double q = x * x + y * (0.19600 * y - 0.25472 * x);
            if (q < 0.27597) return v / u;
            if (q > 0.27846) continue;
            if (v * v <= -4.0 * u * u * std::log(u)) return v / u;
        }
    }

    // uniform on the unit 2-sphere surface
    std::array<double, 3> sphere_surface() {
        double z = uniform(-1.0, 1.0);
        double phi = uniform(0.0, 2.0 * M_PI);
        double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        return {r * std::cos(phi), r * std::sin(phi), z};
    }

    // uniform in the closed unit ball (radial cdf r^3)
    std::array<double, 3> ball() {
        auto d = sphere_surface();
        double r = std::cbrt(uniform());
        return {r * d[0], r * d[1], r * d[2]};
    }

  private:
    static uint64_t mix(uint64_t z) {
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ULL;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBULL;
        z ^= z >> 31;
        return z;
    }
    uint64_t key_;
    uint64_t counter_;
};

}  // namespace rwb
