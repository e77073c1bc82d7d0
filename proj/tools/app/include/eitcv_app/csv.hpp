#pragma once

// Deterministic CSV output: a '#'-prefixed key=value metadata block, one
// header row, then rows of doubles printed with 17 significant digits.

#include <algorithm>
#include <cstddef>
#include <exception>
#include <filesystem>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

namespace eitcv::app {

std::string format_double(double value);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns);

  void add_meta(std::string key, std::string value);
  // Throws std::logic_error on a column-count mismatch.
  void add_row(const std::vector<double>& values);

  std::size_t row_count() const { return rows_.size(); }
  std::string str() const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::pair<std::string, std::string>> meta_;
  std::vector<std::vector<double>> rows_;
};

// Creates parent directories; a failure is reported as ValidationError (the
// output path is user input).
void write_file(const std::filesystem::path& path, std::string_view content);

// Evaluates fn(0..n-1) on worker threads; results keep index order.
template <class Fn>
auto parallel_map(std::size_t n, Fn fn) -> std::vector<decltype(fn(std::size_t{}))> {
  using Result = decltype(fn(std::size_t{}));
  std::vector<Result> out(n);
  std::vector<std::exception_ptr> errors(n);
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(n, std::thread::hardware_concurrency()));
  auto work = [&](std::size_t first) {
    for (std::size_t i = first; i < n; i += workers) {
      try {
        out[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work, w);
  work(0);
  for (std::thread& t : pool) t.join();
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace eitcv::app
