#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace subsetcodec {

// Exit codes: 0 success, 1 verification or decoding failure, 2 usage or
// parameter error. args[0] is the program name.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int dispatch(int argc, char** argv);

}  // namespace subsetcodec
