#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "netprofile/net_types.hpp"

namespace netprofile {

inline constexpr std::uint32_t kCaptureMagic = 0xa1b2c3d4;
inline constexpr std::uint32_t kLinkTypeEthernet = 1;

struct RawFrame {
    std::vector<std::uint8_t> bytes;
    Timestamp ts;

    friend bool operator==(const RawFrame&, const RawFrame&) = default;
};

enum class CaptureErrorKind { BadMagic, UnsupportedLinkType, TruncatedHeader, TruncatedRecord, OversizedRecord, Io };

class CaptureError : public std::runtime_error {
public:
    CaptureError(CaptureErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    [[nodiscard]] CaptureErrorKind kind() const { return kind_; }

private:
    CaptureErrorKind kind_;
};

/// Anything that yields Ethernet frames in arrival order.
class FrameSource {
public:
    virtual ~FrameSource() = default;
    /// nullopt at end of stream.
    virtual std::optional<RawFrame> next_frame() = 0;
};

/// Reader for the classic microsecond capture-file format: a 24-byte global
/// header followed by 16-byte record headers, each with its frame bytes.
/// Either byte order is accepted; only Ethernet link type is.
class CaptureReader final : public FrameSource {
public:
    /// Reads and validates the global header. Throws CaptureError.
    explicit CaptureReader(std::unique_ptr<std::istream> stream);

    static CaptureReader open_file(const std::filesystem::path& path);

    /// Throws CaptureError(TruncatedRecord / OversizedRecord).
    std::optional<RawFrame> next_frame() override;

    /// File byte order differs from the host's.
    [[nodiscard]] bool swapped() const { return swapped_; }
    [[nodiscard]] bool big_endian() const { return big_endian_; }
    [[nodiscard]] std::uint32_t snaplen() const { return snaplen_; }
    [[nodiscard]] std::uint32_t link_type() const { return link_type_; }
    [[nodiscard]] std::uint16_t version_major() const { return version_major_; }
    [[nodiscard]] std::uint16_t version_minor() const { return version_minor_; }

private:
    [[nodiscard]] std::uint32_t u32(const std::uint8_t* p) const;
    [[nodiscard]] std::uint16_t u16(const std::uint8_t* p) const;

    std::unique_ptr<std::istream> stream_;
    bool big_endian_ = false;
    bool swapped_ = false;
    std::uint16_t version_major_ = 0;
    std::uint16_t version_minor_ = 0;
    std::uint32_t snaplen_ = 0;
    std::uint32_t link_type_ = 0;
};

/// Convenience: opens `path` and reads every frame. Throws CaptureError.
std::vector<RawFrame> read_capture_file(const std::filesystem::path& path);

/// Live frames from a Linux AF_PACKET socket bound to one interface. Needs
/// CAP_NET_RAW; not exercised by the automated tests.
class LiveCapture final : public FrameSource {
public:
    explicit LiveCapture(const std::string& interface_name, std::uint32_t snaplen = 65535);
    ~LiveCapture() override;
    LiveCapture(const LiveCapture&) = delete;
    LiveCapture& operator=(const LiveCapture&) = delete;

    /// Blocks up to one second; returns an empty frame on timeout so the
    /// caller can check for shutdown. nullopt once the socket fails.
    std::optional<RawFrame> next_frame() override;

private:
    int fd_ = -1;
    std::uint32_t snaplen_;
};

}  // namespace netprofile
