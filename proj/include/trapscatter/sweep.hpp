#pragma once

// Parameter ranges, tabular datasets and an order-preserving parallel map
// used by the command-line sweeps.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace trapscatter::sweep {

/// `start:stop:count[:log]`, or a single number meaning a one-point range.
struct Range {
  double start = 0.0;
  double stop = 0.0;
  int count = 1;
  bool log = false;

  std::vector<double> values() const {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(count));
    if (count == 1) {
      out.push_back(start);
      return out;
    }
    for (int i = 0; i < count; ++i) {
      const double f = static_cast<double>(i) / (count - 1);
      if (log) {
        out.push_back(std::exp(std::log(start) + f * (std::log(stop) - std::log(start))));
      } else {
        out.push_back(start + f * (stop - start));
      }
    }
    // Endpoints exactly as given.
    out.front() = start;
    out.back() = stop;
    return out;
  }

  std::string to_string() const;
};

inline std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string Range::to_string() const {
  if (count == 1) return format_number(start);
  std::string s = format_number(start) + ":" + format_number(stop) + ":" + std::to_string(count);
  if (log) s += ":log";
  return s;
}

inline double parse_number(const std::string& text) {
  if (text == "inf" || text == "infinity") return INFINITY;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a number: '" + text + "'");
  }
  if (used != text.size()) throw std::invalid_argument("not a number: '" + text + "'");
  return v;
}

inline Range parse_range(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (!text.empty() && text.back() == ':') parts.emplace_back();
  Range r;
  if (parts.size() == 1) {
    r.start = r.stop = parse_number(parts[0]);
    return r;
  }
  if (parts.size() != 3 && parts.size() != 4) {
    throw std::invalid_argument("range must be start:stop:count[:log], got '" + text + "'");
  }
  r.start = parse_number(parts[0]);
  r.stop = parse_number(parts[1]);
  double count = parse_number(parts[2]);
  if (!(count >= 1.0) || count != std::floor(count) || count > 1e7) {
    throw std::invalid_argument("range count must be a positive integer, got '" + parts[2] + "'");
  }
  r.count = static_cast<int>(count);
  if (parts.size() == 4) {
    if (parts[3] != "log") throw std::invalid_argument("range scale must be 'log', got '" + parts[3] + "'");
    r.log = true;
  }
  if (r.count == 1 && r.start != r.stop) {
    throw std::invalid_argument("a one-point range needs start == stop, got '" + text + "'");
  }
  if (r.count > 1 && !(r.start < r.stop)) {
    throw std::invalid_argument("range needs start < stop, got '" + text + "'");
  }
  if (r.log && !(r.start > 0.0)) throw std::invalid_argument("log range needs positive endpoints");
  return r;
}

struct Dataset {
  std::string command;
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  /// Derived results (fits, identifications) written after the table.
  std::vector<std::pair<std::string, std::string>> notes;
  /// Command line reproducing this dataset.
  std::string rerun;
};

inline void write_csv(std::ostream& os, const Dataset& d, const std::string& version) {
  os << "# trapscatter " << version << "\n";
  os << "# command: " << d.command << "\n";
  for (const auto& [k, v] : d.params) os << "# param " << k << "=" << v << "\n";
  if (!d.rerun.empty()) os << "# rerun: " << d.rerun << "\n";
  for (std::size_t i = 0; i < d.columns.size(); ++i) os << (i ? "," : "") << d.columns[i];
  os << "\n";
  for (const auto& row : d.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_number(row[i]);
    os << "\n";
  }
  for (const auto& [k, v] : d.notes) os << "# result " << k << "=" << v << "\n";
}

/// fn(i) for i in [0, n) on up to `threads` workers; results in index order.
/// The first exception thrown by any task is rethrown after all workers stop.
template <typename T>
std::vector<T> parallel_map(std::size_t n, unsigned threads, const std::function<T(std::size_t)>& fn) {
  std::vector<T> out(n);
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    while (!failed.load()) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        out[i] = fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        failed = true;
      }
    }
  };
  std::vector<std::thread> pool;
  const unsigned count = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  pool.reserve(count);
  for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace trapscatter::sweep
