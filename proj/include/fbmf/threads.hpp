#pragma once

namespace fbmf {

// Number of worker threads internal loops may use. Controlled by the
// FBM_FORECAST_THREADS environment variable; 0 or unset means "auto"
// (all hardware threads). Always at least 1.
int thread_budget();

}  // namespace fbmf
