#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "buffon/errors.hpp"

namespace buffon {

// Stream of i.i.d. fair bits with exact consumption counting.
class BitSource {
  public:
    virtual ~BitSource() = default;

    int next_bit() {
        int b = draw();
        ++consumed_;
        return b;
    }

    std::uint64_t consumed() const { return consumed_; }

    virtual std::string identity() const = 0;

  private:
    virtual int draw() = 0;

    std::uint64_t consumed_ = 0;
};

// Fixed bit sequence, e.g. "1101"; raises ExhaustedError past the end.
class ReplaySource final : public BitSource {
  public:
    explicit ReplaySource(std::string_view bits);
    explicit ReplaySource(std::vector<int> bits);

    std::string identity() const override { return "replay"; }

  private:
    int draw() override;

    std::vector<std::uint8_t> bits_;
    std::size_t pos_ = 0;
};

// Deterministic pseudo-random bits. Distinct stream indices under the
// same master seed give independent streams, so trials are reproducible
// and order-independent under parallel sharding.
class SeededSource final : public BitSource {
  public:
    SeededSource(std::uint64_t master_seed, std::uint64_t stream_index);

    std::string identity() const override { return "mt19937_64/seed_seq"; }

  private:
    int draw() override;

    std::mt19937_64 rng_;
    std::uint64_t buffer_ = 0;
    int available_ = 0;
};

}  // namespace buffon
