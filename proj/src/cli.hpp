#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pagecert::cli {

// exit status: 0 all certified, 1 a certification or solver failure, 2 bad usage
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pagecert::cli
