#pragma once

namespace radonlp {

/// Worker cap for the OpenMP kernels (no-op without OpenMP).
void set_thread_count(int threads);
int thread_count();
bool have_openmp();

}  // namespace radonlp
