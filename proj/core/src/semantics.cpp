#include "ssi/semantics.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

#include "json_detail.hpp"

namespace ssi {

std::vector<World> WorldSet::members() const {
  std::vector<World> out;
  for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(static_cast<World>(std::countr_zero(b)));
  return out;
}

Frame::Frame(std::size_t n, std::vector<WorldSet> successors, WorldSet normals)
    : successors_(std::move(successors)), normals_(normals) {
  if (n < 1 || n > max_worlds) throw std::invalid_argument("frame needs between 1 and 64 worlds");
  if (successors_.size() != n) throw std::invalid_argument("frame needs one successor set per world");
  const WorldSet all = WorldSet::first(n);
  for (WorldSet s : successors_)
    if (!s.subset_of(all)) throw std::invalid_argument("relation mentions a world outside the frame");
  if (!normals_.subset_of(all)) throw std::invalid_argument("normal world outside the frame");
}

Frame Frame::from_edges(std::size_t n, std::span<const std::pair<World, World>> edges,
                        std::span<const World> normals) {
  if (n < 1 || n > max_worlds) throw std::invalid_argument("frame needs between 1 and 64 worlds");
  std::vector<WorldSet> succ(n);
  for (auto [w, v] : edges) {
    if (w >= n || v >= n) throw std::invalid_argument("edge mentions a world outside the frame");
    succ[w].insert(v);
  }
  WorldSet nor;
  for (World w : normals) {
    if (w >= n) throw std::invalid_argument("normal world outside the frame");
    nor.insert(w);
  }
  return Frame(n, std::move(succ), nor);
}

std::uint64_t Frame::relation_code() const {
  const std::size_t n = size();
  if (n > 8) throw std::length_error("relation_code needs at most 8 worlds");
  std::uint64_t code = 0;
  for (World w = 0; w < n; ++w) code |= successors_[w].bits() << (w * n);
  return code;
}

namespace {

struct NamedClass {
  std::string_view name;
  FrameClass cls;
};

constexpr FrameClass normal_class(bool d, bool t, bool four, bool b, bool five) {
  return {.serial = d, .reflexive = t, .transitive = four, .symmetric = b, .euclidean = five, .all_normal = true};
}

// First entry with given flags is the canonical name for them.
constexpr std::array named_classes{
    NamedClass{"s2_0", {}},
    NamedClass{"s2", {.reflexive = true}},
    NamedClass{"s3", {.reflexive = true, .transitive = true}},
    NamedClass{"k", normal_class(false, false, false, false, false)},
    NamedClass{"kd", normal_class(true, false, false, false, false)},
    NamedClass{"kt", normal_class(false, true, false, false, false)},
    NamedClass{"t", normal_class(false, true, false, false, false)},
    NamedClass{"kb", normal_class(false, false, false, true, false)},
    NamedClass{"k4", normal_class(false, false, true, false, false)},
    NamedClass{"k5", normal_class(false, false, false, false, true)},
    NamedClass{"kd4", normal_class(true, false, true, false, false)},
    NamedClass{"kd5", normal_class(true, false, false, false, true)},
    NamedClass{"k45", normal_class(false, false, true, false, true)},
    NamedClass{"kd45", normal_class(true, false, true, false, true)},
    NamedClass{"kb4", normal_class(false, false, true, true, false)},
    NamedClass{"kdb", normal_class(true, false, false, true, false)},
    NamedClass{"ktb", normal_class(false, true, false, true, false)},
    NamedClass{"b", normal_class(false, true, false, true, false)},
    NamedClass{"s4", normal_class(false, true, true, false, false)},
    NamedClass{"kt4", normal_class(false, true, true, false, false)},
    NamedClass{"s5", normal_class(false, true, false, false, true)},
};

}  // namespace

std::string FrameClass::name() const {
  for (const auto& nc : named_classes)
    if (nc.cls == *this) return std::string(nc.name);
  std::string out;
  auto add = [&](bool on, std::string_view flag) {
    if (!on) return;
    if (!out.empty()) out += '+';
    out += flag;
  };
  add(serial, "serial");
  add(reflexive, "reflexive");
  add(transitive, "transitive");
  add(symmetric, "symmetric");
  add(euclidean, "euclidean");
  add(all_normal, "all_normal");
  return out;
}

std::optional<FrameClass> frame_class_by_name(std::string_view name) {
  for (const auto& nc : named_classes)
    if (nc.name == name) return nc.cls;
  return std::nullopt;
}

std::vector<std::string> frame_class_names() {
  std::vector<std::string> out;
  for (const auto& nc : named_classes) out.emplace_back(nc.name);
  return out;
}

bool satisfies_class(const Frame& frame, const FrameClass& cls) {
  const std::size_t n = frame.size();
  if (cls.all_normal && frame.normals() != frame.worlds()) return false;
  for (World w = 0; w < n; ++w) {
    const WorldSet s = frame.successors(w);
    if (cls.serial && s.empty()) return false;
    if (cls.reflexive && !s.contains(w)) return false;
    for (World v : s.members()) {
      if (cls.transitive && !frame.successors(v).subset_of(s)) return false;
      if (cls.symmetric && !frame.related(v, w)) return false;
      if (cls.euclidean && !s.subset_of(frame.successors(v))) return false;
    }
  }
  return true;
}

Model::Model(Frame frame, Valuation valuation) : frame_(std::move(frame)), valuation_(std::move(valuation)) {
  for (const auto& [name, set] : valuation_)
    if (!set.subset_of(frame_.worlds()))
      throw std::invalid_argument("valuation of '" + name + "' leaves the world range");
}

WorldSet Model::value(const std::string& var) const {
  auto it = valuation_.find(var);
  return it == valuation_.end() ? WorldSet{} : it->second;
}

namespace {

class Compiler {
 public:
  Compiler(std::vector<Program::Instr>& code, const std::vector<std::string>& vars) : code_(code), vars_(vars) {}

  std::uint32_t emit(const Formula& f) {
    if (auto it = memo_.find(f); it != memo_.end()) return it->second;
    Program::Instr ins{f.op()};
    switch (arity(f.op())) {
      case 0:
        if (f.op() == Op::var) {
          auto pos = std::lower_bound(vars_.begin(), vars_.end(), f.name());
          ins.a = static_cast<std::uint32_t>(pos - vars_.begin());
        }
        break;
      case 1:
        ins.a = emit(f.lhs());
        break;
      default:
        ins.a = emit(f.lhs());
        ins.b = emit(f.rhs());
    }
    const auto slot = static_cast<std::uint32_t>(code_.size());
    code_.push_back(ins);
    memo_.emplace(f, slot);
    return slot;
  }

 private:
  std::vector<Program::Instr>& code_;
  const std::vector<std::string>& vars_;
  std::map<Formula, std::uint32_t> memo_;
};

}  // namespace

Program::Program(const Formula& f) {
  const auto vs = ssi::variables(f);
  vars_.assign(vs.begin(), vs.end());
  Compiler(code_, vars_).emit(f);
}

WorldSet Program::run(const Frame& frame, std::span<const WorldSet> valuation, std::span<WorldSet> scratch) const {
  if (valuation.size() < vars_.size()) throw std::invalid_argument("valuation shorter than variable list");
  if (scratch.size() < code_.size()) throw std::invalid_argument("scratch buffer too small");
  const std::size_t n = frame.size();
  const WorldSet all = frame.worlds();
  const WorldSet normals = frame.normals();
  for (std::size_t i = 0; i < code_.size(); ++i) {
    const Instr& ins = code_[i];
    const WorldSet a = scratch[ins.a];
    const WorldSet b = scratch[ins.b];
    WorldSet out;
    switch (ins.op) {
      case Op::var: out = valuation[ins.a]; break;
      case Op::bot: break;
      case Op::conj: out = a & b; break;
      case Op::disj: out = a | b; break;
      case Op::imp: out = (all - a) | b; break;
      default:
        for (World w = 0; w < n; ++w) {
          const WorldSet s = frame.successors(w);
          const bool normal = normals.contains(w);
          bool holds = false;
          switch (ins.op) {
            case Op::box: holds = normal && s.subset_of(a); break;
            case Op::dia: holds = !normal || !(s & a).empty(); break;
            case Op::strict: holds = normal && (s & a).subset_of(b); break;
            case Op::ssi: holds = normal && (s & a).subset_of(b) && !(s & a).empty(); break;
            case Op::sssi:
              holds = normal && (s & a).subset_of(b) && !(s & a).empty() && !(s - b).empty();
              break;
            default: break;
          }
          if (holds) out.insert(w);
        }
    }
    scratch[i] = out;
  }
  return scratch[code_.size() - 1];
}

WorldSet Program::run(const Frame& frame, std::span<const WorldSet> valuation) const {
  std::vector<WorldSet> scratch(code_.size());
  return run(frame, valuation, scratch);
}

namespace {

std::vector<WorldSet> positional(const Model& m, const Program& prog) {
  std::vector<WorldSet> vals;
  vals.reserve(prog.variables().size());
  for (const auto& v : prog.variables()) vals.push_back(m.value(v));
  return vals;
}

}  // namespace

WorldSet extension(const Model& m, const Formula& f) {
  const Program prog(f);
  return prog.run(m.frame(), positional(m, prog));
}

bool eval(const Model& m, World w, const Formula& f) {
  if (w >= m.frame().size())
    throw std::out_of_range("world " + std::to_string(w) + " not in a " + std::to_string(m.frame().size()) +
                            "-world model");
  return extension(m, f).contains(w);
}

bool true_in_model(const Model& m, const Formula& f) { return m.frame().normals().subset_of(extension(m, f)); }

std::uint64_t valuation_count(std::size_t n, std::size_t vars) {
  const std::size_t bits = n * vars;
  if (bits > 62) throw std::length_error("too many valuations to enumerate");
  return std::uint64_t{1} << bits;
}

void decode_valuation(std::uint64_t code, std::size_t n, std::span<WorldSet> out) {
  const std::uint64_t mask = WorldSet::first(n).bits();
  const std::size_t k = out.size();
  for (std::size_t i = 0; i < k; ++i) out[i] = WorldSet((code >> ((k - 1 - i) * n)) & mask);
}

bool valid_on_frame(const Frame& frame, const Formula& f) {
  const Program prog(f);
  const std::size_t k = prog.variables().size();
  const std::uint64_t total = valuation_count(frame.size(), k);
  std::vector<WorldSet> vals(k);
  std::vector<WorldSet> scratch(prog.slots());
  for (std::uint64_t code = 0; code < total; ++code) {
    decode_valuation(code, frame.size(), vals);
    if (!frame.normals().subset_of(prog.run(frame, vals, scratch))) return false;
  }
  return true;
}

namespace detail {

namespace {

nlohmann::ordered_json world_list(WorldSet s) {
  auto out = nlohmann::ordered_json::array();
  for (World w : s.members()) out.push_back(w);
  return out;
}

WorldSet read_world_list(const nlohmann::json& j, std::size_t n, const char* what) {
  if (!j.is_array()) throw std::invalid_argument(std::string(what) + " must be an array of world indices");
  WorldSet out;
  for (const auto& x : j) {
    if (!x.is_number_unsigned() || x.get<std::uint64_t>() >= n)
      throw std::invalid_argument(std::string(what) + " contains an invalid world index");
    out.insert(x.get<World>());
  }
  return out;
}

}  // namespace

ordered_json frame_json(const Frame& f) {
  ordered_json j;
  j["worlds"] = f.size();
  auto rel = ordered_json::array();
  for (World w = 0; w < f.size(); ++w) rel.push_back(world_list(f.successors(w)));
  j["rel"] = std::move(rel);
  j["normals"] = world_list(f.normals());
  return j;
}

ordered_json model_json(const Model& m) {
  ordered_json j = frame_json(m.frame());
  ordered_json val = ordered_json::object();
  for (const auto& [name, set] : m.valuation()) val[name] = world_list(set);
  j["val"] = std::move(val);
  return j;
}

Model model_from_json_value(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("model must be a JSON object");
  for (const char* key : {"worlds", "rel", "normals"})
    if (!j.contains(key)) throw std::invalid_argument(std::string("model lacks \"") + key + "\"");
  if (!j["worlds"].is_number_unsigned()) throw std::invalid_argument("\"worlds\" must be a positive integer");
  const auto n = j["worlds"].get<std::size_t>();
  if (n < 1 || n > Frame::max_worlds) throw std::invalid_argument("\"worlds\" must be between 1 and 64");
  const auto& rel = j["rel"];
  if (!rel.is_array() || rel.size() != n) throw std::invalid_argument("\"rel\" needs one row per world");
  std::vector<WorldSet> succ;
  for (const auto& row : rel) succ.push_back(read_world_list(row, n, "\"rel\" row"));
  Frame frame(n, std::move(succ), read_world_list(j["normals"], n, "\"normals\""));
  Model::Valuation val;
  if (j.contains("val")) {
    if (!j["val"].is_object()) throw std::invalid_argument("\"val\" must be an object");
    for (const auto& [name, worlds] : j["val"].items()) val[name] = read_world_list(worlds, n, "\"val\" entry");
  }
  return Model(std::move(frame), std::move(val));
}

}  // namespace detail

std::string model_to_json(const Model& m) { return detail::model_json(m).dump(); }

Model model_from_json(std::string_view text) {
  try {
    return detail::model_from_json_value(nlohmann::json::parse(text));
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed model JSON: ") + e.what());
  }
}

}  // namespace ssi
