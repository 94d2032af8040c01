#include "netprofile/capture.hpp"

#include <arpa/inet.h>
#include <linux/if_packet.h>
#include <net/ethernet.h>
#include <net/if.h>
#include <poll.h>
#include <sys/socket.h>
#include <sys/time.h>
#include <unistd.h>

#include <bit>
#include <cerrno>
#include <cstdio>
#include <cstring>
#include <fstream>

namespace netprofile {

namespace {

constexpr std::size_t kGlobalHeaderLen = 24;
constexpr std::size_t kRecordHeaderLen = 16;

/// Reads up to `n` bytes; returns how many arrived.
std::size_t read_some(std::istream& in, std::uint8_t* out, std::size_t n) {
    in.read(reinterpret_cast<char*>(out), static_cast<std::streamsize>(n));
    return static_cast<std::size_t>(in.gcount());
}

}  // namespace

CaptureReader::CaptureReader(std::unique_ptr<std::istream> stream) : stream_(std::move(stream)) {
    std::uint8_t header[kGlobalHeaderLen];
    const std::size_t got = read_some(*stream_, header, kGlobalHeaderLen);
    if (got < 4) throw CaptureError(CaptureErrorKind::BadMagic, "capture too short for a magic number");

    const std::uint32_t le = std::uint32_t{header[0]} | (std::uint32_t{header[1]} << 8) | (std::uint32_t{header[2]} << 16) |
                             (std::uint32_t{header[3]} << 24);
    if (le == kCaptureMagic) {
        big_endian_ = false;
    } else if (__builtin_bswap32(le) == kCaptureMagic) {
        big_endian_ = true;
    } else {
        char buf[16];
        std::snprintf(buf, sizeof buf, "%08x", __builtin_bswap32(le));
        throw CaptureError(CaptureErrorKind::BadMagic, std::string("bad capture magic ") + buf);
    }
    swapped_ = big_endian_ != (std::endian::native == std::endian::big);
    if (got < kGlobalHeaderLen) throw CaptureError(CaptureErrorKind::TruncatedHeader, "truncated capture global header");

    version_major_ = u16(header + 4);
    version_minor_ = u16(header + 6);
    snaplen_ = u32(header + 16);
    link_type_ = u32(header + 20);
    if (link_type_ != kLinkTypeEthernet) {
        throw CaptureError(CaptureErrorKind::UnsupportedLinkType, "unsupported link type " + std::to_string(link_type_));
    }
}

CaptureReader CaptureReader::open_file(const std::filesystem::path& path) {
    auto in = std::make_unique<std::ifstream>(path, std::ios::binary);
    if (!*in) throw CaptureError(CaptureErrorKind::Io, "cannot open capture " + path.string());
    return CaptureReader(std::move(in));
}

std::uint32_t CaptureReader::u32(const std::uint8_t* p) const {
    if (big_endian_) return (std::uint32_t{p[0]} << 24) | (std::uint32_t{p[1]} << 16) | (std::uint32_t{p[2]} << 8) | p[3];
    return std::uint32_t{p[0]} | (std::uint32_t{p[1]} << 8) | (std::uint32_t{p[2]} << 16) | (std::uint32_t{p[3]} << 24);
}

std::uint16_t CaptureReader::u16(const std::uint8_t* p) const {
    return big_endian_ ? static_cast<std::uint16_t>((p[0] << 8) | p[1]) : static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::optional<RawFrame> CaptureReader::next_frame() {
    std::uint8_t header[kRecordHeaderLen];
    const std::size_t got = read_some(*stream_, header, kRecordHeaderLen);
    if (got == 0) return std::nullopt;
    if (got < kRecordHeaderLen) throw CaptureError(CaptureErrorKind::TruncatedRecord, "truncated record header");

    RawFrame frame;
    frame.ts.sec = u32(header);
    frame.ts.usec = u32(header + 4);
    const std::uint32_t incl_len = u32(header + 8);
    // A zero snaplen in the header means "unknown"; fall back to the usual maximum.
    const std::uint32_t limit = snaplen_ == 0 ? 262144 : snaplen_;
    if (incl_len > limit) {
        throw CaptureError(CaptureErrorKind::OversizedRecord,
                           "record of " + std::to_string(incl_len) + " bytes exceeds snaplen " + std::to_string(limit));
    }
    frame.bytes.resize(incl_len);
    if (read_some(*stream_, frame.bytes.data(), incl_len) < incl_len) {
        throw CaptureError(CaptureErrorKind::TruncatedRecord, "record data shorter than incl_len " + std::to_string(incl_len));
    }
    return frame;
}

std::vector<RawFrame> read_capture_file(const std::filesystem::path& path) {
    auto reader = CaptureReader::open_file(path);
    std::vector<RawFrame> frames;
    while (auto frame = reader.next_frame()) frames.push_back(std::move(*frame));
    return frames;
}

LiveCapture::LiveCapture(const std::string& interface_name, std::uint32_t snaplen) : snaplen_(snaplen) {
    fd_ = ::socket(AF_PACKET, SOCK_RAW | SOCK_CLOEXEC, htons(ETH_P_ALL));
    if (fd_ < 0) throw CaptureError(CaptureErrorKind::Io, std::string("packet socket: ") + std::strerror(errno));

    sockaddr_ll addr{};
    addr.sll_family = AF_PACKET;
    addr.sll_protocol = htons(ETH_P_ALL);
    addr.sll_ifindex = static_cast<int>(::if_nametoindex(interface_name.c_str()));
    if (addr.sll_ifindex == 0 || ::bind(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) != 0) {
        const int err = errno;
        ::close(fd_);
        throw CaptureError(CaptureErrorKind::Io, "cannot bind to " + interface_name + ": " + std::strerror(err));
    }
}

LiveCapture::~LiveCapture() {
    if (fd_ >= 0) ::close(fd_);
}

std::optional<RawFrame> LiveCapture::next_frame() {
    pollfd pfd{fd_, POLLIN, 0};
    const int ready = ::poll(&pfd, 1, 1000);
    if (ready < 0 && errno != EINTR) return std::nullopt;
    RawFrame frame;
    if (ready <= 0) return frame;

    frame.bytes.resize(snaplen_);
    const ssize_t n = ::recv(fd_, frame.bytes.data(), frame.bytes.size(), 0);
    if (n < 0) return errno == EINTR ? std::optional<RawFrame>(RawFrame{}) : std::nullopt;
    frame.bytes.resize(static_cast<std::size_t>(n));
    timeval tv{};
    ::gettimeofday(&tv, nullptr);
    frame.ts = {tv.tv_sec, tv.tv_usec};
    return frame;
}

}  // namespace netprofile
