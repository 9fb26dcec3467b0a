#include "msf/io.hpp"

#include <bit>
#include <fstream>
#include <iterator>
#include <string>
#include <string_view>

#include "msf/error.hpp"

namespace msf::io {
namespace {

constexpr std::size_t max_values = std::size_t{1} << 31;

class Writer {
public:
    void magic(std::string_view tag) { bytes_.insert(bytes_.end(), tag.begin(), tag.end()); }

    void u32(std::uint32_t v)
    {
        for (int i = 0; i < 4; ++i) bytes_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }

    void f64(double v)
    {
        const auto bits = std::bit_cast<std::uint64_t>(v);
        for (int i = 0; i < 8; ++i) bytes_.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
    }

    void values(std::span<const Complex> data)
    {
        bytes_.reserve(bytes_.size() + data.size() * 16);
        for (const auto& c : data) {
            f64(c.real());
            f64(c.imag());
        }
    }

    std::vector<std::uint8_t> take() { return std::move(bytes_); }

private:
    std::vector<std::uint8_t> bytes_;
};

class Reader {
public:
    explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    void magic(std::string_view tag)
    {
        need(tag.size(), "magic");
        for (std::size_t i = 0; i < tag.size(); ++i)
            if (bytes_[pos_ + i] != static_cast<std::uint8_t>(tag[i]))
                fail_at(pos_ + i, "bad magic, expected '" + std::string(tag) + "'");
        pos_ += tag.size();
    }

    std::uint32_t u32(const char* field)
    {
        need(4, field);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(bytes_[pos_ + i]) << (8 * i);
        pos_ += 4;
        return v;
    }

    void values(std::span<Complex> out)
    {
        need(out.size() * 16, "values");
        for (auto& c : out) c = {f64(), f64()};
    }

    void finish()
    {
        if (pos_ != bytes_.size())
            fail(std::to_string(bytes_.size() - pos_) + " trailing bytes after payload");
    }

    [[noreturn]] void fail(const std::string& what) const { fail_at(pos_, what); }

    [[noreturn]] void fail_at(std::size_t offset, const std::string& what) const
    {
        ErrorContext ctx;
        ctx.index = static_cast<long>(offset);
        throw Error(ErrorCode::FormatError, what + " at offset " + std::to_string(offset), ctx);
    }

    std::size_t position() const { return pos_; }

private:
    void need(std::size_t n, const char* field)
    {
        if (bytes_.size() - pos_ < n)
            fail(std::string("truncated input reading ") + field);
    }

    double f64()
    {
        std::uint64_t bits = 0;
        for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(bytes_[pos_ + i]) << (8 * i);
        pos_ += 8;
        return std::bit_cast<double>(bits);
    }

    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

void check_version(Reader& in)
{
    const std::size_t at = in.position();
    const auto version = in.u32("version");
    if (version != format_version) in.fail_at(at, "unsupported version " + std::to_string(version));
}

std::vector<std::uint8_t> slurp(const std::filesystem::path& path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorCode::FormatError, "cannot open " + path.string());
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

void dump(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes)
{
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(ErrorCode::FormatError, "cannot write " + path.string());
    f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!f) throw Error(ErrorCode::FormatError, "short write to " + path.string());
}

}  // namespace

std::vector<std::uint8_t> encode_coefficients(const LaurentMatrixPoly& p)
{
    Writer out;
    out.magic("MSFC");
    out.u32(format_version);
    out.u32(static_cast<std::uint32_t>(p.dim()));
    out.u32(static_cast<std::uint32_t>(p.n_neg()));
    out.u32(static_cast<std::uint32_t>(p.n_pos()));
    out.values(p.data());
    return out.take();
}

std::vector<std::uint8_t> encode_grid(const GridSamples& s)
{
    Writer out;
    out.magic("MSFG");
    out.u32(format_version);
    out.u32(static_cast<std::uint32_t>(s.dim()));
    out.u32(static_cast<std::uint32_t>(s.size()));
    out.values(s.data());
    return out.take();
}

LaurentMatrixPoly decode_coefficients(std::span<const std::uint8_t> bytes)
{
    Reader in(bytes);
    in.magic("MSFC");
    check_version(in);
    const auto r = in.u32("r");
    const auto n_neg = in.u32("n_neg");
    const auto n_pos = in.u32("n_pos");
    if (r == 0) in.fail_at(8, "matrix dimension must be positive");
    const std::size_t slots = std::size_t{n_neg} + n_pos + 1;
    if (r > 65535 || n_neg > (1u << 30) || n_pos > (1u << 30) || slots * r * r > max_values)
        in.fail("header describes an implausibly large payload");
    LaurentMatrixPoly p(static_cast<int>(r), static_cast<int>(n_neg), static_cast<int>(n_pos));
    in.values(p.data());
    in.finish();
    return p;
}

GridSamples decode_grid(std::span<const std::uint8_t> bytes)
{
    Reader in(bytes);
    in.magic("MSFG");
    check_version(in);
    const auto r = in.u32("r");
    const std::size_t size_at = in.position();
    const auto size = in.u32("N_g");
    if (r == 0) in.fail_at(8, "matrix dimension must be positive");
    if (size < 2 || !is_pow2(size))
        in.fail_at(size_at, "grid size " + std::to_string(size) + " is not a power of two");
    if (r > 65535 || std::size_t{size} * r * r > max_values)
        in.fail("header describes an implausibly large payload");
    GridSamples s(static_cast<int>(r), static_cast<int>(size));
    in.values(s.data());
    in.finish();
    return s;
}

void write_coefficients(const std::filesystem::path& path, const LaurentMatrixPoly& p)
{
    dump(path, encode_coefficients(p));
}

void write_grid(const std::filesystem::path& path, const GridSamples& s) { dump(path, encode_grid(s)); }

LaurentMatrixPoly read_coefficients(const std::filesystem::path& path)
{
    return decode_coefficients(slurp(path));
}

GridSamples read_grid(const std::filesystem::path& path) { return decode_grid(slurp(path)); }

}  // namespace msf::io
