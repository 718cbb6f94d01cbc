#ifndef SMOOTHFEM_PARALLEL_HPP
#define SMOOTHFEM_PARALLEL_HPP

#include <functional>

namespace sfem {

/// Worker count used by element-loop parallelism; 1 keeps every code path
/// strictly sequential and byte-deterministic.
void set_worker_threads(int threads);
int worker_threads();

/// Runs fn over contiguous index chunks. Chunk results must be merged by
/// the caller in chunk order when the reduction is order-sensitive.
void parallel_chunks(int begin, int end, const std::function<void(int chunk, int b, int e)>& fn);

} // namespace sfem

#endif
