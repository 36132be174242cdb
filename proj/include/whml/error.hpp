#pragma once

#include <stdexcept>
#include <string>

namespace whml {

enum class errc {
    domain,
    pole,
    overflow,
    accuracy,
    resolution,
    singular_point,
    not_fredholm,
    io,
    internal
};

inline const char* errc_name(errc c)
{
    switch (c) {
    case errc::domain: return "domain error";
    case errc::pole: return "pole error";
    case errc::overflow: return "overflow error";
    case errc::accuracy: return "accuracy error";
    case errc::resolution: return "resolution error";
    case errc::singular_point: return "singular-point error";
    case errc::not_fredholm: return "not-Fredholm error";
    case errc::io: return "I/O error";
    case errc::internal: return "internal error";
    }
    return "error";
}

class error : public std::runtime_error {
public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

} // namespace whml
