#pragma once

#include <cstdint>
#include <vector>

namespace rdhei {

// Growable bit buffer, MSB-first within each backing byte.
class BitVec {
public:
    BitVec() = default;

    void push_back(bool bit) {
        const std::size_t byte = size_ / 8;
        if (byte == bytes_.size())
            bytes_.push_back(0);
        if (bit)
            bytes_[byte] |= static_cast<std::uint8_t>(0x80u >> (size_ % 8));
        ++size_;
    }

    bool operator[](std::size_t i) const {
        return (bytes_[i / 8] >> (7 - i % 8)) & 1u;
    }

    std::size_t size() const { return size_; }
    bool empty() const { return size_ == 0; }

    // value emitted MSB first
    void append_uint(std::uint64_t value, int width) {
        for (int b = width - 1; b >= 0; --b)
            push_back((value >> b) & 1u);
    }

    void append(const BitVec& other) {
        for (std::size_t i = 0; i < other.size(); ++i)
            push_back(other[i]);
    }

private:
    std::vector<std::uint8_t> bytes_;
    std::size_t size_ = 0;
};

// Sequential reader over a BitVec; past-the-end reads return zero bits so
// arithmetic decoding can drain its register after the final code bit.
class BitReader {
public:
    explicit BitReader(const BitVec& bits) : bits_(&bits) {}

    bool next() {
        if (pos_ >= bits_->size()) {
            ++pos_;
            return false;
        }
        return (*bits_)[pos_++];
    }

    std::uint64_t read_uint(int width) {
        std::uint64_t v = 0;
        for (int b = 0; b < width; ++b)
            v = (v << 1) | (next() ? 1u : 0u);
        return v;
    }

    std::size_t pos() const { return pos_; }
    void seek(std::size_t pos) { pos_ = pos; }
    std::size_t remaining() const {
        return pos_ >= bits_->size() ? 0 : bits_->size() - pos_;
    }

private:
    const BitVec* bits_;
    std::size_t pos_ = 0;
};

} // namespace rdhei
