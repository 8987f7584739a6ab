#include "lzn/address.hpp"

#include <sstream>
#include <stdexcept>

namespace lzn {

TreeAddress TreeAddress::parent() const {
  if (steps_.empty()) throw std::logic_error("root address has no parent");
  std::vector<std::uint32_t> s(steps_.begin(), steps_.end() - 1);
  return TreeAddress(std::move(s));
}

TreeAddress TreeAddress::prefix(int len) const {
  std::vector<std::uint32_t> s(steps_.begin(), steps_.begin() + len);
  return TreeAddress(std::move(s));
}

bool TreeAddress::is_prefix_of(const TreeAddress& other) const {
  if (steps_.size() > other.steps_.size()) return false;
  for (std::size_t i = 0; i < steps_.size(); ++i)
    if (steps_[i] != other.steps_[i]) return false;
  return true;
}

int TreeAddress::common_prefix_length(const TreeAddress& other) const {
  std::size_t n = std::min(steps_.size(), other.steps_.size());
  std::size_t i = 0;
  while (i < n && steps_[i] == other.steps_[i]) ++i;
  return static_cast<int>(i);
}

std::string TreeAddress::to_string() const {
  if (steps_.empty()) return "()";
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < steps_.size(); ++i) {
    if (i) os << '.';
    os << steps_[i];
  }
  os << ')';
  return os.str();
}

std::optional<TreeAddress> TreeAddress::parse(const std::string& text) {
  if (text.size() < 2 || text.front() != '(' || text.back() != ')') return std::nullopt;
  std::string body = text.substr(1, text.size() - 2);
  if (body.empty()) return TreeAddress::root();
  std::vector<std::uint32_t> steps;
  std::size_t pos = 0;
  while (pos <= body.size()) {
    std::size_t dot = body.find('.', pos);
    std::string tok = body.substr(pos, dot == std::string::npos ? std::string::npos : dot - pos);
    if (tok.empty()) return std::nullopt;
    for (char c : tok)
      if (c < '0' || c > '9') return std::nullopt;
    steps.push_back(static_cast<std::uint32_t>(std::stoul(tok)));
    if (dot == std::string::npos) break;
    pos = dot + 1;
  }
  return TreeAddress(std::move(steps));
}

int VertexId::index() const {
  if (kind_ != Kind::Index) throw std::logic_error("vertex id is not an index");
  return index_;
}

const TreeAddress& VertexId::address() const {
  if (kind_ != Kind::Address) throw std::logic_error("vertex id is not an address");
  return address_;
}

std::string VertexId::to_string() const {
  if (kind_ == Kind::Index) return std::to_string(index_);
  return address_.to_string();
}

std::optional<VertexId> VertexId::parse(const std::string& text) {
  if (text.empty()) return std::nullopt;
  if (text.front() == '(') {
    auto a = TreeAddress::parse(text);
    if (!a) return std::nullopt;
    return VertexId::from_address(*a);
  }
  for (char c : text)
    if (c < '0' || c > '9') return std::nullopt;
  return VertexId::from_index(std::stoi(text));
}

std::size_t VertexId::hash() const {
  std::size_t h = kind_ == Kind::Index ? 0x9e3779b97f4a7c15ULL : 0x2545f4914f6cdd1dULL;
  if (kind_ == Kind::Index) {
    h ^= std::hash<int>{}(index_) + 0x9e3779b9 + (h << 6) + (h >> 2);
  } else {
    for (std::uint32_t s : address_.steps())
      h ^= std::hash<std::uint32_t>{}(s) + 0x9e3779b9 + (h << 6) + (h >> 2);
  }
  return h;
}

}  // namespace lzn
