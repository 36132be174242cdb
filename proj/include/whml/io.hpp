#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <string>
#include <string_view>

#include "error.hpp"

namespace whml {

// FNV-1a, 64 bit
inline std::uint64_t fnv1a64(std::string_view bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::string hash_hex(std::string_view bytes)
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(bytes)));
    return buf;
}

// writes the whole buffer and returns its content hash
inline std::string write_file(const std::string& path, std::string_view bytes)
{
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os)
        fail(errc::io, "cannot open '" + path + "' for writing");
    os.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    os.close();
    if (!os)
        fail(errc::io, "write to '" + path + "' failed");
    return hash_hex(bytes);
}

} // namespace whml
