#pragma once

#include <cstddef>
#include <functional>

namespace reactline {

/// Runs fn(begin, end) over a static block partition of [0, n) on up to
/// `jobs` threads. Workers must write results only through their own index
/// range, which makes output independent of scheduling; jobs <= 1 runs
/// inline. Exceptions from workers are rethrown on the calling thread.
void parallel_for(std::size_t n, int jobs,
                  const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace reactline
