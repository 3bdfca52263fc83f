#include "buffon/bit_source.hpp"

namespace buffon {

ReplaySource::ReplaySource(std::string_view bits) {
    bits_.reserve(bits.size());
    for (char c : bits) {
        if (c != '0' && c != '1') {
            throw DomainError("ReplaySource: bit string must be over {0,1}");
        }
        bits_.push_back(static_cast<std::uint8_t>(c - '0'));
    }
}

ReplaySource::ReplaySource(std::vector<int> bits) {
    bits_.reserve(bits.size());
    for (int b : bits) {
        if (b != 0 && b != 1) {
            throw DomainError("ReplaySource: bits must be 0 or 1");
        }
        bits_.push_back(static_cast<std::uint8_t>(b));
    }
}

int ReplaySource::draw() {
    if (pos_ >= bits_.size()) {
        throw ExhaustedError("ReplaySource: out of bits after " +
                             std::to_string(bits_.size()));
    }
    return bits_[pos_++];
}

SeededSource::SeededSource(std::uint64_t master_seed,
                           std::uint64_t stream_index) {
    std::seed_seq seq{static_cast<std::uint32_t>(master_seed),
                      static_cast<std::uint32_t>(master_seed >> 32),
                      static_cast<std::uint32_t>(stream_index),
                      static_cast<std::uint32_t>(stream_index >> 32)};
    rng_.seed(seq);
}

int SeededSource::draw() {
    if (available_ == 0) {
        buffer_ = rng_();
        available_ = 64;
    }
    int b = static_cast<int>(buffer_ & 1);
    buffer_ >>= 1;
    --available_;
    return b;
}

}  // namespace buffon
