#include "smoothfem/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace sfem {

namespace {
std::atomic<int> g_threads{1};
}

void set_worker_threads(int threads)
{
    g_threads.store(std::max(1, threads));
}

int worker_threads()
{
    return g_threads.load();
}

void parallel_chunks(int begin, int end, const std::function<void(int, int, int)>& fn)
{
    const int n = end - begin;
    if (n <= 0)
        return;
    const int nw = std::min(worker_threads(), n);
    if (nw <= 1) {
        fn(0, begin, end);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(nw);
    const int chunk = (n + nw - 1) / nw;
    for (int w = 0; w < nw; ++w) {
        const int b = begin + w * chunk;
        const int e = std::min(end, b + chunk);
        if (b >= e)
            break;
        pool.emplace_back([w, b, e, &fn] { fn(w, b, e); });
    }
    for (auto& t : pool)
        t.join();
}

} // namespace sfem
