#pragma once

#include <iosfwd>

namespace hstiefel {

/// argv-style entry point (argv[0] is the program name). Payloads go to
/// `out`, diagnostics to `err`. Returns 0 on success, 1 on domain
/// failures (off-manifold input, invalid level, unreadable data), 2 on
/// usage errors.
int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

}  // namespace hstiefel
