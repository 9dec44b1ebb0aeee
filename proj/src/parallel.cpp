#include "chainent/parallel.hpp"

#include <omp.h>

namespace chainent {

int resolve_workers(int workers)
{
    return workers > 0 ? workers : omp_get_max_threads();
}

}  // namespace chainent
