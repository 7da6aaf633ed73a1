#ifndef PRODSPEC_PARALLEL_HPP
#define PRODSPEC_PARALLEL_HPP

#include <cstddef>
#include <cstdint>
#include <exception>
#include <vector>

namespace prodspec {

// Every data-parallel loop in the library has a plain serial path, kept as
// the reference, and an OpenMP path. Each iteration writes only its own slot,
// so both paths give bitwise identical results.
enum class Exec { serial, parallel };

void set_num_threads(int n);
int max_threads();

template <class Body>
void for_each_index_serial(std::size_t n, Body&& body) {
  for (std::size_t i = 0; i < n; ++i) body(i);
}

// An exception thrown by any iteration is rethrown on the calling thread
// (the one from the lowest index, as the serial loop would report).
template <class Body>
void for_each_index_omp(std::size_t n, Body&& body) {
  const std::int64_t m = static_cast<std::int64_t>(n);
  std::exception_ptr first;
  std::int64_t first_index = m;
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < m; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(prodspec_for_each_error)
      if (i < first_index) {
        first_index = i;
        first = std::current_exception();
      }
    }
  }
  if (first) std::rethrow_exception(first);
}

template <class Body>
void for_each_index(Exec exec, std::size_t n, Body&& body) {
  if (exec == Exec::parallel && n > 1)
    for_each_index_omp(n, body);
  else
    for_each_index_serial(n, body);
}

// Evaluates fn(i) for i in [0, n) into a vector, by index.
template <class T, class Fn>
std::vector<T> map_index(Exec exec, std::size_t n, Fn&& fn) {
  std::vector<T> out(n);
  for_each_index(exec, n, [&](std::size_t i) { out[i] = fn(i); });
  return out;
}

}  // namespace prodspec

#endif  // PRODSPEC_PARALLEL_HPP
