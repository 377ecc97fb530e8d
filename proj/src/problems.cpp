#include "qsr/problems.hpp"

#include <cstdlib>
#include <stdexcept>

namespace qsr {

std::string default_data_dir() {
  if (const char* env = std::getenv("QSR_DATA_DIR"); env && *env) return env;
  return QSR_DATA_DIR;
}

Problem load_problem(const std::string& name, const std::string& data_dir) {
  std::string file;
  if (name == "deuteron-1") {
    file = "deuteron-2q.json";
  } else if (name == "deuteron-2") {
    file = "deuteron-3q.json";
  } else {
    throw std::invalid_argument("unknown problem '" + name + "'");
  }
  return Problem{name, ansatz_by_name(name),
                 load_observable(data_dir + "/" + file)};
}

std::vector<std::string> problem_names() { return ansatz_names(); }

}  // namespace qsr
