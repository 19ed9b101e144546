#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hdcc {

/// Base of every failure caused by input data rather than the description.
/// The command-line driver maps these to exit code 2.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public DataError {
public:
    explicit IoError(const std::string &path, const std::string &what = "cannot open file")
        : DataError(path + ": " + what), path_(path)
    {
    }
    const std::string &path() const { return path_; }

private:
    std::string path_;
};

class FormatError : public DataError {
public:
    FormatError(const std::string &path, std::size_t line, std::size_t col, const std::string &what)
        : DataError(path + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + what),
          line_(line), col_(col)
    {
    }
    std::size_t line() const { return line_; }
    std::size_t col() const { return col_; }

private:
    std::size_t line_;
    std::size_t col_;
};

class RangeError : public DataError {
public:
    using DataError::DataError;
};

/// A feature value that names no row of its embedding table.
class IndexError : public DataError {
public:
    IndexError(std::size_t feature, const std::string &what)
        : DataError("feature " + std::to_string(feature) + ": " + what), feature_(feature)
    {
    }
    std::size_t feature() const { return feature_; }

private:
    std::size_t feature_;
};

/// Sample or label count disagrees with TRAIN_SIZE / TEST_SIZE.
class CountError : public DataError {
public:
    CountError(const std::string &path, std::size_t expected, std::size_t found)
        : DataError(path + ": expected " + std::to_string(expected) + " lines, found " +
                    std::to_string(found)),
          expected_(expected), found_(found)
    {
    }
    std::size_t expected() const { return expected_; }
    std::size_t found() const { return found_; }

private:
    std::size_t expected_;
    std::size_t found_;
};

} // namespace hdcc
