#ifndef SYZLAB_PARALLEL_HPP
#define SYZLAB_PARALLEL_HPP

#ifdef _OPENMP
#include <omp.h>
#endif

namespace syzlab::par {

inline void set_threads(int n) {
#ifdef _OPENMP
    if (n > 0) omp_set_num_threads(n);
#else
    (void)n;
#endif
}

inline int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace syzlab::par

#endif
