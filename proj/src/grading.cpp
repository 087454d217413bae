#include "colstr/grading.hpp"

#include <sstream>

namespace colstr {

std::string to_string(const MultiDegree& d) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < d.size(); ++i) os << (i ? "," : "") << d[i];
  os << ')';
  return os.str();
}

GradingSpec::GradingSpec(std::vector<MultiDegree> degrees) : m_(0), degrees_(std::move(degrees)) {
  if (!degrees_.empty()) m_ = degrees_.front().size();
  for (const auto& d : degrees_)
    if (d.size() != m_) throw std::invalid_argument("grading vectors must share one length");
}

GradingSpec GradingSpec::standard(std::size_t nvars) {
  return GradingSpec(std::vector<MultiDegree>(nvars, MultiDegree{1}));
}

GradingSpec GradingSpec::columns(std::size_t rows, std::size_t cols) {
  std::vector<MultiDegree> deg;
  deg.reserve(rows * cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      MultiDegree d(cols, 0);
      d[j] = 1;
      deg.push_back(d);
    }
  return GradingSpec(std::move(deg));
}

MultiDegree GradingSpec::degree_of(const Monomial& mono) const {
  MultiDegree d(m_, 0);
  for (auto [i, e] : mono.support())
    for (std::size_t k = 0; k < m_; ++k) d[k] += static_cast<std::int64_t>(e) * degrees_[i][k];
  return d;
}

}  // namespace colstr
