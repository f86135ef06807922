#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace hrel {

class io_error : public std::runtime_error {
public:
    explicit io_error(const std::string& msg) : std::runtime_error(msg) {}
};

inline std::string slurp_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw io_error("read failure on '" + path + "'");
    return ss.str();
}

}  // namespace hrel
