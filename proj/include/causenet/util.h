#ifndef CAUSENET_UTIL_H_
#define CAUSENET_UTIL_H_

#include <cstddef>
#include <filesystem>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace causenet {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file. Carries the 1-based line number when known (0 if not).
class FormatError : public Error {
 public:
  FormatError(const std::string& where, std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Argument outside the domain an operation is defined on.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A token or phrase with no vector in the embedding store.
class OovError : public Error {
 public:
  explicit OovError(const std::string& phrase);
  const std::string& phrase() const { return phrase_; }

 private:
  std::string phrase_;
};

// A quantity that has no defined value for the given input (0/0 and kin).
class UndefinedError : public Error {
 public:
  using Error::Error;
};

// Warnings go through a process-wide sink. The default writes to stderr.
using WarningSink = std::function<void(std::string_view)>;
void Warn(std::string_view message);
WarningSink SetWarningSink(WarningSink sink);

// Collects warnings for the lifetime of the object, then restores the
// previous sink.
class WarningCapture {
 public:
  WarningCapture();
  ~WarningCapture();
  WarningCapture(const WarningCapture&) = delete;
  WarningCapture& operator=(const WarningCapture&) = delete;

  const std::vector<std::string>& messages() const { return messages_; }
  bool Contains(std::string_view needle) const;

 private:
  std::vector<std::string> messages_;
  WarningSink previous_;
};

// Lowercase hex SHA-256 of a byte string / file contents.
std::string Sha256Hex(std::string_view bytes);
std::string Sha256File(const std::filesystem::path& path);

std::string ReadFile(const std::filesystem::path& path);
void WriteFile(const std::filesystem::path& path, std::string_view contents);

// Shortest decimal form that parses back to the same double.
std::string FormatDouble(double value);

// Runs fn(i) for i in [0, n) on up to `workers` threads and returns the
// results in index order, so output never depends on the worker count.
template <typename Fn>
auto ParallelMap(std::size_t n, int workers, Fn fn)
    -> std::vector<decltype(fn(std::size_t{}))>;

void ParallelFor(std::size_t n, int workers,
                 const std::function<void(std::size_t)>& fn);

template <typename Fn>
auto ParallelMap(std::size_t n, int workers, Fn fn)
    -> std::vector<decltype(fn(std::size_t{}))> {
  std::vector<decltype(fn(std::size_t{}))> out(n);
  ParallelFor(n, workers, [&](std::size_t i) { out[i] = fn(i); });
  return out;
}

}  // namespace causenet

#endif  // CAUSENET_UTIL_H_
