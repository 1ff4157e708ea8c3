#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace comprec {

// Streaming FNV-1a 64-bit. Used as the content hash that ties derived
// artifacts (supergraph, embeddings, candidate lists) back to the graph
// they were computed from.
class Fnv1a64 {
public:
    Fnv1a64& update(std::string_view bytes) {
        for (unsigned char c : bytes) {
            state_ ^= c;
            state_ *= 0x100000001b3ULL;
        }
        return *this;
    }
    std::uint64_t digest() const { return state_; }

private:
    std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

inline std::uint64_t fnv1a64(std::string_view bytes) {
    return Fnv1a64().update(bytes).digest();
}

inline std::string hash_to_hex(std::uint64_t h) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[h & 0xf];
        h >>= 4;
    }
    return out;
}

}  // namespace comprec
