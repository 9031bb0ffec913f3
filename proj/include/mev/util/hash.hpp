#pragma once

#include <cstdint>
#include <cstring>
#include <string>
#include <string_view>

namespace mev {

// FNV-1a, the project-wide content hash. Chosen over std::hash for a stable
// value across platforms and standard libraries.
class Fnv64 {
public:
    Fnv64& bytes(const void* data, std::size_t n)
    {
        auto* p = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < n; ++i) {
            h_ ^= p[i];
            h_ *= 0x100000001b3ULL;
        }
        return *this;
    }
    Fnv64& u64(std::uint64_t v)
    {
        unsigned char buf[8];
        for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>(v >> (8 * i));
        return bytes(buf, 8);
    }
    Fnv64& i64(std::int64_t v) { return u64(static_cast<std::uint64_t>(v)); }
    Fnv64& str(std::string_view s) { return bytes(s.data(), s.size()); }
    std::uint64_t value() const { return h_; }

private:
    std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace mev
