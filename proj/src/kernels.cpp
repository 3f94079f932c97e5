#include "gkp/kernels.hpp"

namespace gkp::kern {

const Backend& active() {
#if defined(__x86_64__)
    static const Backend& chosen = avx2_available() ? avx2_backend() : scalar_backend();
#else
    static const Backend& chosen = scalar_backend();
#endif
    return chosen;
}

std::string active_name() { return active().name; }

}  // namespace gkp::kern
