#include "prodspec/parallel.hpp"

#include <omp.h>

#include "prodspec/error.hpp"

namespace prodspec {

void set_num_threads(int n) {
  require(n >= 1, "thread count must be >= 1");
  omp_set_num_threads(n);
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace prodspec
