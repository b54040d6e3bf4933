#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "coarse/bits.hpp"

namespace coarse {

// Binary run-length container for committed prefixes.
//
// Layout: magic "GMA1", one version byte (1), ULEB128 bit count, then
// ULEB128 run lengths alternating starting with the run of zeros (the first
// run may be 0 when the sequence starts with a one; later runs are positive;
// runs sum to the bit count). Deterministic: equal sequences produce equal
// bytes.
void write_bit_file(const std::filesystem::path& path, const BitSeq& bits);
BitSeq read_bit_file(const std::filesystem::path& path);

void append_uleb128(std::string& out, std::uint64_t v);
std::uint64_t read_uleb128(const std::string& buf, std::size_t& pos);

std::string encode_bit_file(const BitSeq& bits);
BitSeq decode_bit_file(const std::string& buf);

}  // namespace coarse
