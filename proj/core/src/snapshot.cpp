#include "gridmind/snapshot.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gridmind {

namespace {

void write_mat(std::ostream& os, const char* name, const IntMat& m) {
  os << name << " " << m.rows() << " " << m.cols() << "\n";
  for (int r = 0; r < m.rows(); ++r) {
    const int32_t* row = m.row(r);
    for (int c = 0; c < m.cols(); ++c) {
      if (c) os << " ";
      os << row[c];
    }
    os << "\n";
  }
}

template <typename T>
void write_vec(std::ostream& os, const char* name, const std::vector<T>& v) {
  os << name << " " << v.size() << "\n";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) os << " ";
    os << v[i];
  }
  os << "\n";
}

struct Reader {
  std::istringstream is;
  explicit Reader(const std::string& text) : is(text) {}

  [[noreturn]] void fail(const std::string& msg) {
    throw std::runtime_error("snapshot parse error: " + msg);
  }
  std::string word() {
    std::string w;
    if (!(is >> w)) fail("unexpected end of document");
    return w;
  }
  void expect(const std::string& key) {
    const std::string w = word();
    if (w != key) fail("expected '" + key + "', got '" + w + "'");
  }
  int64_t integer() {
    int64_t v;
    if (!(is >> v)) fail("expected integer");
    return v;
  }
  double real() {
    // strtod handles the hexfloat form; istream extraction does not
    const std::string w = word();
    char* end = nullptr;
    const double v = std::strtod(w.c_str(), &end);
    if (end != w.c_str() + w.size()) fail("bad number '" + w + "'");
    return v;
  }
  uint64_t hex() {
    std::string w = word();
    return std::stoull(w, nullptr, 16);
  }

  IntMat mat(const std::string& key) {
    expect(key);
    const int rows = static_cast<int>(integer());
    const int cols = static_cast<int>(integer());
    IntMat m(rows, cols);
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) m(r, c) = static_cast<int32_t>(integer());
    return m;
  }
  template <typename T>
  std::vector<T> vec(const std::string& key) {
    expect(key);
    const size_t n = static_cast<size_t>(integer());
    std::vector<T> v(n);
    for (auto& x : v) x = static_cast<T>(integer());
    return v;
  }
};

}  // namespace

std::string serialize_snapshot(const Snapshot& snap) {
  std::ostringstream os;
  const Params& p = snap.net.params;
  os << "gridmind-snapshot 1\n";
  os << "params"
     << " n_o " << p.n_o << " n_a " << p.n_a << " ws_o " << p.ws_o << " ws_a "
     << p.ws_a << " stl " << p.stl << " st_fail " << p.st_fail << " sto_min "
     << p.sto_min << " sto_max " << p.sto_max << " learn_at " << p.learn_at
     << " noise_o " << p.noise_o << " noise_a " << p.noise_a << " tnb_fired_o "
     << p.tnb_fired_o << " tnb_learning_o " << p.tnb_learning_o
     << " tnb_query_o " << p.tnb_query_o << " tnb_fired_a " << p.tnb_fired_a
     << " tnb_learning_a " << p.tnb_learning_a << " tnb_query_a "
     << p.tnb_query_a << " boost_param_o " << p.boost_param_o
     << " boost_param_a " << p.boost_param_a << " last_spiked_o_init_max "
     << p.last_spiked_o_init_max << " last_spiked_a_init_max "
     << p.last_spiked_a_init_max << "\n";
  // the SGR/modulation curve parameters are doubles; hexfloat keeps the
  // round trip exact
  os << "curves " << std::hexfloat << p.sgr_lo_offset << " " << p.sgr_lo_slope
     << " " << p.sgr_lo_base << " " << p.sgr_a_offset << " " << p.sgr_a_slope
     << " " << p.sgr_a_base << " " << p.min_coef_mod_cnx << " "
     << p.max_coef_mod_cnx << std::defaultfloat << "\n";
  os << "step " << snap.agent.step_count << "\n";
  os << "agent " << snap.agent.depart_loc.x << " " << snap.agent.depart_loc.y
     << "\n";
  write_vec(os, "prev_fired_o", snap.agent.prev_fired_o);
  write_mat(os, "cnx_lo", snap.net.cnx_lo);
  write_mat(os, "cnx_oa1", snap.net.cnx_oa1);
  write_mat(os, "cnx_ma2", snap.net.cnx_ma2);
  write_mat(os, "cnx_oa3", snap.net.cnx_oa3);
  write_vec(os, "sto", snap.net.sto);
  write_vec(os, "backward_sto", snap.net.backward_sto);
  write_vec(os, "last_spiked_o", snap.net.last_spiked_o);
  write_vec(os, "last_spiked_a", snap.net.last_spiked_a);
  os << "rng " << std::hex;
  for (int i = 0; i < 4; ++i) os << (i ? " " : "") << snap.rng_state[i];
  os << std::dec << "\n";
  os << "world_checksum " << std::hex << snap.world_checksum << std::dec
     << "\n";
  os << "world " << snap.world_text.size() << "\n" << snap.world_text << "\n";
  return os.str();
}

Snapshot parse_snapshot(const std::string& text) {
  Reader rd(text);
  rd.expect("gridmind-snapshot");
  if (rd.word() != "1") rd.fail("unsupported snapshot version");

  Snapshot snap;
  Params& p = snap.net.params;
  rd.expect("params");
  auto ival = [&rd](const char* key) {
    rd.expect(key);
    return rd.integer();
  };
  p.n_o = static_cast<int>(ival("n_o"));
  p.n_a = static_cast<int>(ival("n_a"));
  p.ws_o = static_cast<int>(ival("ws_o"));
  p.ws_a = static_cast<int>(ival("ws_a"));
  p.stl = static_cast<int>(ival("stl"));
  p.st_fail = static_cast<int>(ival("st_fail"));
  p.sto_min = static_cast<int>(ival("sto_min"));
  p.sto_max = static_cast<int>(ival("sto_max"));
  p.learn_at = static_cast<int>(ival("learn_at"));
  p.noise_o = static_cast<int>(ival("noise_o"));
  p.noise_a = static_cast<int>(ival("noise_a"));
  p.tnb_fired_o = static_cast<int>(ival("tnb_fired_o"));
  p.tnb_learning_o = static_cast<int>(ival("tnb_learning_o"));
  p.tnb_query_o = static_cast<int>(ival("tnb_query_o"));
  p.tnb_fired_a = static_cast<int>(ival("tnb_fired_a"));
  p.tnb_learning_a = static_cast<int>(ival("tnb_learning_a"));
  p.tnb_query_a = static_cast<int>(ival("tnb_query_a"));
  p.boost_param_o = static_cast<int>(ival("boost_param_o"));
  p.boost_param_a = static_cast<int>(ival("boost_param_a"));
  p.last_spiked_o_init_max = ival("last_spiked_o_init_max");
  p.last_spiked_a_init_max = ival("last_spiked_a_init_max");
  rd.expect("curves");
  p.sgr_lo_offset = rd.real();
  p.sgr_lo_slope = rd.real();
  p.sgr_lo_base = rd.real();
  p.sgr_a_offset = rd.real();
  p.sgr_a_slope = rd.real();
  p.sgr_a_base = rd.real();
  p.min_coef_mod_cnx = rd.real();
  p.max_coef_mod_cnx = rd.real();

  rd.expect("step");
  snap.agent.step_count = rd.integer();
  rd.expect("agent");
  snap.agent.depart_loc.x = static_cast<int>(rd.integer());
  snap.agent.depart_loc.y = static_cast<int>(rd.integer());
  snap.agent.prev_fired_o = rd.vec<int>("prev_fired_o");
  snap.net.cnx_lo = rd.mat("cnx_lo");
  snap.net.cnx_oa1 = rd.mat("cnx_oa1");
  snap.net.cnx_ma2 = rd.mat("cnx_ma2");
  snap.net.cnx_oa3 = rd.mat("cnx_oa3");
  snap.net.sto = rd.vec<int32_t>("sto");
  snap.net.backward_sto = rd.vec<int32_t>("backward_sto");
  snap.net.last_spiked_o = rd.vec<int64_t>("last_spiked_o");
  snap.net.last_spiked_a = rd.vec<int64_t>("last_spiked_a");
  rd.expect("rng");
  for (auto& w : snap.rng_state) w = rd.hex();
  rd.expect("world_checksum");
  snap.world_checksum = rd.hex();
  rd.expect("world");
  const auto n = static_cast<size_t>(rd.integer());
  rd.is.get();  // the newline after the byte count
  snap.world_text.resize(n);
  rd.is.read(snap.world_text.data(), static_cast<std::streamsize>(n));
  if (rd.is.gcount() != static_cast<std::streamsize>(n))
    rd.fail("truncated world document");
  return snap;
}

void save_snapshot(const Snapshot& snap, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write snapshot: " + path);
  out << serialize_snapshot(snap);
}

Snapshot load_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read snapshot: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_snapshot(buf.str());
}

uint64_t fnv1a64(const std::string& bytes) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

uint64_t snapshot_hash(const Snapshot& snap) {
  return fnv1a64(serialize_snapshot(snap));
}

}  // namespace gridmind
