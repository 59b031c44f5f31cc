#pragma once

namespace koz {

/// Entry point of the command-line tool. Exit codes: 0 = computed verdict
/// (positive or negative), 2 = input error, 3 = capacity guard, 4 = internal.
int cli_main(int argc, char** argv);

}  // namespace koz
