#pragma once

namespace pulsedemod {

/// Entry point behind the `pulsedemod` binary. Exit codes: 0 success,
/// 1 usage error, 2 data/parse error, 3 numerical error.
int cli_main(int argc, const char* const* argv);

} // namespace pulsedemod
