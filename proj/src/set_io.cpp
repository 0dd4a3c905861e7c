#include "subsetcodec/set_io.hpp"

#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

#include "subsetcodec/error.hpp"

namespace subsetcodec {

namespace {
constexpr char kMagic[8] = {'S', 'U', 'B', 'S', 'E', 'T', '0', '1'};
}

std::vector<std::uint8_t> serialize_set(const FinitePrefixSet& a) {
    const std::uint64_t horizon = a.horizon();
    const std::uint64_t nbytes = (horizon + 7) / 8;
    std::vector<std::uint8_t> out(16 + nbytes, 0);
    std::memcpy(out.data(), kMagic, 8);
    for (int b = 0; b < 8; ++b) out[8 + b] = static_cast<std::uint8_t>(horizon >> (8 * b));
    const auto words = a.words();
    for (std::uint64_t i = 0; i < nbytes; ++i) {
        out[16 + i] = static_cast<std::uint8_t>(words[i / 8] >> (8 * (i % 8)));
    }
    return out;
}

FinitePrefixSet deserialize_set(const std::vector<std::uint8_t>& bytes) {
    if (bytes.size() < 16 || std::memcmp(bytes.data(), kMagic, 8) != 0) {
        fail(ErrorKind::format, "missing SUBSET01 header");
    }
    std::uint64_t horizon = 0;
    for (int b = 0; b < 8; ++b) horizon |= static_cast<std::uint64_t>(bytes[8 + b]) << (8 * b);
    const std::uint64_t nbytes = (horizon + 7) / 8;
    if (bytes.size() - 16 != nbytes) {
        fail(ErrorKind::format, "payload holds " + std::to_string(bytes.size() - 16) + " bytes, horizon " +
                                    std::to_string(horizon) + " needs " + std::to_string(nbytes));
    }
    FinitePrefixSet a(horizon);
    for (std::uint64_t i = 0; i < nbytes; ++i) {
        const std::uint8_t byte = bytes[16 + i];
        for (unsigned bit = 0; bit < 8; ++bit) {
            if (((byte >> bit) & 1U) == 0) continue;
            const std::uint64_t n = i * 8 + bit;
            if (n >= horizon) fail(ErrorKind::format, "bit set beyond the horizon");
            a.set(n);
        }
    }
    return a;
}

void write_file_atomically(const std::filesystem::path& path, const std::string& contents) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) fail(ErrorKind::io, "cannot open " + tmp.string() + " for writing");
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        if (!out) fail(ErrorKind::io, "write failed for " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        fail(ErrorKind::io, "cannot move output into place at " + path.string());
    }
}

void write_set(const std::filesystem::path& path, const FinitePrefixSet& a) {
    const auto bytes = serialize_set(a);
    write_file_atomically(path, std::string(bytes.begin(), bytes.end()));
}

FinitePrefixSet read_set(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::io, "cannot open " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    try {
        return deserialize_set(bytes);
    } catch (const Error& e) {
        fail(e.kind(), path.string() + ": " + e.what());
    }
}

std::string profile_csv(const DensityProfile& profile) {
    std::ostringstream out;
    out << "n,count,density_num,density_den\n";
    for (std::uint64_t n = 0; n < profile.horizon(); ++n) {
        const Rational d = profile.value(n);
        out << n << ',' << profile.count(n) << ',' << d.numerator() << ',' << d.denominator() << '\n';
    }
    return out.str();
}

void write_profile_csv(const std::filesystem::path& path, const DensityProfile& profile) {
    write_file_atomically(path, profile_csv(profile));
}

}  // namespace subsetcodec
