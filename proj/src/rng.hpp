#pragma once

#include <cstdint>

namespace srsense {

// SplitMix64 finalizer. Used for seeding and key derivation.
std::uint64_t mix64(std::uint64_t z);

// Hierarchical stream key. Every Monte Carlo entity (experiment, grid point,
// trial, noise role) derives its own child key, so no two entities ever share
// a random stream and results are independent of evaluation order.
class SeedPath {
public:
    SeedPath() = default;
    static SeedPath root(std::uint64_t master);
    SeedPath child(std::uint64_t index) const;
    std::uint64_t key() const { return key_; }

private:
    explicit SeedPath(std::uint64_t key) : key_(key) {}
    std::uint64_t key_ = 0;
};

// xoshiro256++ with a Box-Muller gaussian layer. The generator and the
// gaussian transform are fixed: identical keys give bit-identical streams
// on a given build, which the reproducibility contract relies on.
class Rng {
public:
    explicit Rng(std::uint64_t key);
    explicit Rng(const SeedPath& path) : Rng(path.key()) {}

    std::uint64_t next_u64();
    double uniform01();  // [0,1), 53-bit resolution
    double gaussian();   // standard normal

private:
    std::uint64_t s_[4];
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace srsense
