#pragma once

#include <Eigen/Dense>
#include <functional>

namespace partialk {

/// Worker thread cap. Resolution order: explicit set_max_threads, the
/// PARTIALK_THREADS environment variable, then hardware concurrency.
int max_threads();
void set_max_threads(int n);

/// Runs fn over [0, n) split into contiguous chunks, one worker per chunk.
/// fn receives (begin, end). Serial when the cap or n is 1.
void parallel_for(Eigen::Index n,
                  const std::function<void(Eigen::Index, Eigen::Index)>& fn);

}  // namespace partialk
