#ifndef CSR_HASH_HPP
#define CSR_HASH_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

#include <openssl/evp.h>

#include "csr/bytes.hpp"
#include "csr/error.hpp"

namespace csr {

enum class HashAlgorithm { sha1, sha256 };

constexpr std::size_t digest_width(HashAlgorithm algo) {
    return algo == HashAlgorithm::sha1 ? 20 : 32;
}

constexpr std::string_view algorithm_name(HashAlgorithm algo) {
    return algo == HashAlgorithm::sha1 ? "sha1" : "sha256";
}

inline std::optional<HashAlgorithm> algorithm_from_name(std::string_view name) {
    if (name == "sha1") return HashAlgorithm::sha1;
    if (name == "sha256") return HashAlgorithm::sha256;
    return std::nullopt;
}

constexpr std::string_view digest_method_uri(HashAlgorithm algo) {
    return algo == HashAlgorithm::sha1 ? "http://www.w3.org/2000/09/xmldsig#sha1"
                                       : "http://www.w3.org/2001/04/xmlenc#sha256";
}

inline std::optional<HashAlgorithm> algorithm_from_uri(std::string_view uri) {
    if (uri == digest_method_uri(HashAlgorithm::sha1)) return HashAlgorithm::sha1;
    if (uri == digest_method_uri(HashAlgorithm::sha256)) return HashAlgorithm::sha256;
    return std::nullopt;
}

/// Counts one-shot hash invocations. Every digest operation threads one of
/// these through, which is what the model comparison measures.
class HashCounter {
public:
    void increment() { ++count_; }
    std::uint64_t count() const { return count_; }

private:
    std::uint64_t count_ = 0;
};

struct Digest {
    HashAlgorithm algorithm = HashAlgorithm::sha1;
    ByteBuffer bytes;

    bool operator==(const Digest&) const = default;

    std::string hex() const { return to_hex(bytes); }
};

/// One-shot hash over `data`. Exactly one counter increment per call.
inline Digest hash_bytes(std::span<const std::uint8_t> data, HashAlgorithm algo,
                         HashCounter& counter) {
    Digest out;
    out.algorithm = algo;
    out.bytes.resize(EVP_MAX_MD_SIZE);
    unsigned int written = 0;
    const EVP_MD* md = algo == HashAlgorithm::sha1 ? EVP_sha1() : EVP_sha256();
    if (EVP_Digest(data.data(), data.size(), out.bytes.data(), &written, md, nullptr) != 1) {
        throw Error("hash computation failed");
    }
    out.bytes.resize(written);
    counter.increment();
    return out;
}

inline Digest hash_bytes(std::string_view data, HashAlgorithm algo, HashCounter& counter) {
    return hash_bytes(std::span<const std::uint8_t>(
                          reinterpret_cast<const std::uint8_t*>(data.data()), data.size()),
                      algo, counter);
}

}  // namespace csr

#endif
