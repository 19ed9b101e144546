#pragma once

#include "hdcc/dataio/number.hpp"
#include "hdcc/errors.hpp"
#include "hdcc/frontend/ast.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hdcc::dataio {

enum class SampleMode { Real, IntegerIndex };

inline SampleMode mode_for(const frontend::ProgramDescription &desc)
{
    return desc.weight_embed.kind == frontend::EmbeddingKind::Random ? SampleMode::IntegerIndex
                                                                     : SampleMode::Real;
}

namespace detail {

/// Line reader shared by the sample and label streams. Holds one line.
class LineReader {
public:
    explicit LineReader(std::string path) : path_(std::move(path)), in_(path_, std::ios::binary)
    {
        if (!in_)
            throw IoError(path_);
    }

    /// Next line without its terminator, or nullopt at end of file. A
    /// trailing newline on the last line is optional; CRLF is accepted.
    std::optional<std::string> next()
    {
        std::string line;
        if (!std::getline(in_, line)) {
            if (in_.bad())
                throw IoError(path_, "read failed");
            return std::nullopt;
        }
        ++line_no_;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            throw FormatError(path_, line_no_, 1, "blank line");
        return line;
    }

    /// Counts the lines left without parsing them.
    std::size_t count_remaining()
    {
        std::size_t n = 0;
        std::string line;
        while (std::getline(in_, line))
            ++n;
        return n;
    }

    const std::string &path() const { return path_; }
    std::size_t line_no() const { return line_no_; }

private:
    std::string path_;
    std::ifstream in_;
    std::size_t line_no_ = 0;
};

} // namespace detail

/// Reads one comma-separated sample per line. At most one line is held in
/// memory; there is no API that buffers the file.
class SampleStream {
public:
    SampleStream(std::string path, std::uint32_t input_dim, SampleMode mode,
                 std::size_t bound = std::numeric_limits<std::size_t>::max())
        : reader_(std::move(path)), input_dim_(input_dim), mode_(mode), bound_(bound)
    {
    }

    SampleMode mode() const { return mode_; }
    std::uint32_t input_dim() const { return input_dim_; }
    std::size_t cursor() const { return cursor_; }
    const std::string &path() const { return reader_.path(); }

    /// Fills `out` with the next sample. Returns false at end of file or once
    /// `bound` samples were produced. Integer-mode values are integral.
    bool next(std::vector<double> &out)
    {
        if (cursor_ >= bound_)
            return false;
        auto line = reader_.next();
        if (!line)
            return false;
        out.clear();
        out.reserve(input_dim_);
        std::size_t start = 0;
        for (;;) {
            const std::size_t comma = line->find(',', start);
            const std::size_t end = comma == std::string::npos ? line->size() : comma;
            const std::string_view field(line->data() + start, end - start);
            const std::size_t col = start + 1;
            if (out.size() == input_dim_)
                throw FormatError(path(), reader_.line_no(), col,
                                  "more than " + std::to_string(input_dim_) + " fields");
            if (mode_ == SampleMode::Real) {
                auto v = parse_real(field);
                if (!v)
                    throw FormatError(path(), reader_.line_no(), col,
                                      "not a decimal number: '" + std::string(field) + "'");
                out.push_back(*v);
            } else {
                auto v = parse_integer(field);
                if (!v)
                    throw FormatError(path(), reader_.line_no(), col,
                                      "not an integer: '" + std::string(field) + "'");
                out.push_back(static_cast<double>(*v));
            }
            if (comma == std::string::npos)
                break;
            start = comma + 1;
        }
        if (out.size() != input_dim_)
            throw FormatError(path(), reader_.line_no(), line->size() + 1,
                              "expected " + std::to_string(input_dim_) + " fields, found " +
                                  std::to_string(out.size()));
        ++cursor_;
        return true;
    }

    std::optional<std::vector<double>> next_sample()
    {
        std::vector<double> v;
        if (!next(v))
            return std::nullopt;
        return v;
    }

    std::size_t count_remaining() { return reader_.count_remaining(); }

private:
    detail::LineReader reader_;
    std::uint32_t input_dim_;
    SampleMode mode_;
    std::size_t bound_;
    std::size_t cursor_ = 0;
};

inline SampleStream open_samples(const std::string &path, const frontend::ProgramDescription &desc,
                                 std::size_t bound = std::numeric_limits<std::size_t>::max())
{
    return SampleStream(path, desc.input_dim, mode_for(desc), bound);
}

inline std::optional<std::vector<double>> next_sample(SampleStream &s) { return s.next_sample(); }

/// One 0-based class label per line.
class LabelStream {
public:
    LabelStream(std::string path, std::uint32_t classes) : reader_(std::move(path)), classes_(classes) {}

    std::optional<std::uint32_t> next()
    {
        auto line = reader_.next();
        if (!line)
            return std::nullopt;
        auto v = parse_integer(*line);
        if (!v)
            throw FormatError(reader_.path(), reader_.line_no(), 1, "not an integer label: '" + *line + "'");
        if (*v < 0 || *v >= classes_)
            throw FormatError(reader_.path(), reader_.line_no(), 1,
                              "label " + *line + " outside [0, " + std::to_string(classes_) + ")");
        ++cursor_;
        return static_cast<std::uint32_t>(*v);
    }

    std::size_t cursor() const { return cursor_; }
    std::size_t count_remaining() { return reader_.count_remaining(); }
    const std::string &path() const { return reader_.path(); }

private:
    detail::LineReader reader_;
    std::uint32_t classes_;
    std::size_t cursor_ = 0;
};

struct ValueRange {
    double min = -1.0;
    double max = 1.0;
};

/// Global min and max over every field of a real-valued file, in one
/// streaming pass.
inline ValueRange prescan_range(const std::string &path, std::uint32_t input_dim)
{
    SampleStream s(path, input_dim, SampleMode::Real);
    std::vector<double> row;
    std::optional<ValueRange> r;
    while (s.next(row)) {
        for (double v : row) {
            if (!r) {
                r = ValueRange{v, v};
            } else {
                r->min = std::min(r->min, v);
                r->max = std::max(r->max, v);
            }
        }
    }
    if (!r)
        throw RangeError(path + ": no values to derive a range from");
    if (!(r->min < r->max))
        throw RangeError(path + ": all values equal " + std::to_string(r->min) + "; range is empty");
    return *r;
}

} // namespace hdcc::dataio
