#include "coarse/bitfile.hpp"

#include <fstream>
#include <stdexcept>

#include "coarse/errors.hpp"

namespace coarse {

namespace {
constexpr char kMagic[4] = {'G', 'M', 'A', '1'};
constexpr unsigned char kVersion = 1;
}  // namespace

void append_uleb128(std::string& out, std::uint64_t v) {
    do {
        unsigned char byte = v & 0x7f;
        v >>= 7;
        if (v != 0) byte |= 0x80;
        out.push_back(static_cast<char>(byte));
    } while (v != 0);
}

std::uint64_t read_uleb128(const std::string& buf, std::size_t& pos) {
    std::uint64_t v = 0;
    int shift = 0;
    for (;;) {
        if (pos >= buf.size()) throw ParseError("bit file: truncated varint", pos);
        const unsigned char byte = static_cast<unsigned char>(buf[pos++]);
        if (shift >= 64 || (shift == 63 && (byte & 0x7e)))
            throw ParseError("bit file: varint overflows 64 bits", pos - 1);
        v |= static_cast<std::uint64_t>(byte & 0x7f) << shift;
        if ((byte & 0x80) == 0) return v;
        shift += 7;
    }
}

std::string encode_bit_file(const BitSeq& bits) {
    std::string out(kMagic, sizeof kMagic);
    out.push_back(static_cast<char>(kVersion));
    append_uleb128(out, bits.size());

    bool current = false;
    std::uint64_t run = 0;
    for (std::uint64_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == current) {
            ++run;
        } else {
            append_uleb128(out, run);
            current = !current;
            run = 1;
        }
    }
    if (bits.size() > 0) append_uleb128(out, run);
    return out;
}

BitSeq decode_bit_file(const std::string& buf) {
    if (buf.size() < 5 || std::string_view(buf.data(), 4) != std::string_view(kMagic, 4))
        throw ParseError("bit file: bad magic", 0);
    if (static_cast<unsigned char>(buf[4]) != kVersion)
        throw ParseError("bit file: unsupported version", 4);
    std::size_t pos = 5;
    const std::uint64_t total = read_uleb128(buf, pos);

    BitSeq bits;
    bool current = false;
    bool first = true;
    std::uint64_t emitted = 0;
    while (emitted < total) {
        const std::size_t at = pos;
        const std::uint64_t run = read_uleb128(buf, pos);
        if (!first && run == 0) throw ParseError("bit file: zero-length run", at);
        if (run > total - emitted) throw ParseError("bit file: runs exceed bit count", at);
        for (std::uint64_t i = 0; i < run; ++i) bits.push_back(current);
        emitted += run;
        current = !current;
        first = false;
    }
    if (pos != buf.size()) throw ParseError("bit file: trailing bytes", pos);
    return bits;
}

void write_bit_file(const std::filesystem::path& path, const BitSeq& bits) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open for writing: " + path.string());
    const std::string payload = encode_bit_file(bits);
    os.write(payload.data(), static_cast<std::streamsize>(payload.size()));
    if (!os) throw std::runtime_error("write failed: " + path.string());
}

BitSeq read_bit_file(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open for reading: " + path.string());
    std::string buf((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    return decode_bit_file(buf);
}

}  // namespace coarse
