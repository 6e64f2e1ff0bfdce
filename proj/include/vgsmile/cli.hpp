#ifndef VGSMILE_CLI_HPP
#define VGSMILE_CLI_HPP

namespace vgsmile::cli {

// Entry point for the vgsmile command-line tool.
// Exit codes: 0 success, 2 validation error, 3 numerical failure.
int run(int argc, const char* const* argv);

} // namespace vgsmile::cli

#endif
