#include "topo/io_ingest.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <set>

#include <json.hpp>

#include "topo/error.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace topo {

namespace {

std::string sidecar_path(const std::string& bin_path) {
  fs::path p(bin_path);
  p.replace_extension(".json");
  return p.string();
}

void write_bytes(const std::string& path, const std::vector<unsigned char>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw io_error("cannot open for writing: " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw io_error("write failed: " + path);
}

std::vector<unsigned char> read_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("missing file: " + path);
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  return bytes;
}

void write_sidecar(const std::string& bin_path, const std::vector<std::int64_t>& shape,
                   const std::string& dtype, const std::string& order) {
  json j;
  j["shape"] = shape;
  j["dtype"] = dtype;
  j["order"] = order;
  std::ofstream out(sidecar_path(bin_path), std::ios::trunc);
  if (!out) throw io_error("cannot open for writing: " + sidecar_path(bin_path));
  out << j.dump(2) << "\n";
}

TensorHeader load_sidecar(const std::string& bin_path) {
  std::ifstream in(sidecar_path(bin_path));
  if (!in) throw io_error("missing sidecar: " + sidecar_path(bin_path));
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw io_error("malformed sidecar " + sidecar_path(bin_path) + ": " + e.what());
  }
  TensorHeader h;
  try {
    h.shape = j.at("shape").get<std::vector<std::int64_t>>();
    h.dtype = j.at("dtype").get<std::string>();
    h.order = j.at("order").get<std::string>();
  } catch (const json::exception& e) {
    throw io_error("malformed sidecar " + sidecar_path(bin_path) + ": " + e.what());
  }
  if (h.dtype != "f32" && h.dtype != "i32")
    throw io_error("unsupported dtype '" + h.dtype + "' in " + sidecar_path(bin_path));
  if (h.order != "cxyz" && h.order != "xyz")
    throw io_error("unsupported order '" + h.order + "' in " + sidecar_path(bin_path));
  for (auto d : h.shape)
    if (d < 1) throw io_error("non-positive dimension in " + sidecar_path(bin_path));
  return h;
}

std::int64_t element_count(const std::vector<std::int64_t>& shape) {
  std::int64_t n = 1;
  for (auto d : shape) n *= d;
  return n;
}

// Blobs are little-endian on disk regardless of host order.
std::uint32_t decode_le32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

void encode_le32(std::uint32_t v, unsigned char* p) {
  p[0] = static_cast<unsigned char>(v);
  p[1] = static_cast<unsigned char>(v >> 8);
  p[2] = static_cast<unsigned char>(v >> 16);
  p[3] = static_cast<unsigned char>(v >> 24);
}

bool proportional_shapes(const std::array<std::int64_t, 3>& t,
                         const std::array<std::int64_t, 3>& l) {
  return t[0] * l[1] == t[1] * l[0] && t[1] * l[2] == t[2] * l[1] && t[0] <= l[0];
}

StageRole parse_role(const json& j, const std::string& ctx) {
  std::string r = j.at("role").get<std::string>();
  int index = j.at("index").get<int>();
  if (index < 0) throw io_error(ctx + ": negative stage index");
  if (r == "decoder") return {StageRole::Kind::Decoder, index};
  if (r == "encoder") return {StageRole::Kind::Encoder, index};
  throw io_error(ctx + ": unknown stage role '" + r + "'");
}

}  // namespace

std::vector<double> StageFeatureDump::feature_at(const VoxelIndex& g) const {
  const std::int64_t fx = tensor_shape[1], fy = tensor_shape[2], fz = tensor_shape[3];
  const std::int64_t plane = fx * fy * fz;
  const std::int64_t at = (g[0] * fy + g[1]) * fz + g[2];
  std::vector<double> out(static_cast<std::size_t>(tensor_shape[0]));
  for (std::int64_t c = 0; c < tensor_shape[0]; ++c) {
    out[static_cast<std::size_t>(c)] = static_cast<double>(tensor[c * plane + at]);
  }
  return out;
}

void write_f32_tensor(const std::string& bin_path, const std::array<std::int64_t, 4>& shape,
                      const std::vector<float>& data) {
  std::vector<unsigned char> bytes(data.size() * 4);
  for (std::size_t i = 0; i < data.size(); ++i) {
    encode_le32(std::bit_cast<std::uint32_t>(data[i]), bytes.data() + 4 * i);
  }
  write_bytes(bin_path, bytes);
  write_sidecar(bin_path, {shape[0], shape[1], shape[2], shape[3]}, "f32", "cxyz");
}

void write_i32_volume(const std::string& bin_path, const std::array<std::int64_t, 3>& shape,
                      const std::vector<std::int32_t>& data) {
  std::vector<unsigned char> bytes(data.size() * 4);
  for (std::size_t i = 0; i < data.size(); ++i) {
    encode_le32(static_cast<std::uint32_t>(data[i]), bytes.data() + 4 * i);
  }
  write_bytes(bin_path, bytes);
  write_sidecar(bin_path, {shape[0], shape[1], shape[2]}, "i32", "xyz");
}

std::pair<TensorHeader, std::vector<float>> load_f32_tensor(const std::string& bin_path) {
  TensorHeader h = load_sidecar(bin_path);
  if (h.dtype != "f32" || h.order != "cxyz" || h.shape.size() != 4)
    throw io_error("expected 4-D f32 cxyz tensor: " + bin_path);
  std::vector<unsigned char> bytes = read_bytes(bin_path);
  std::int64_t n = element_count(h.shape);
  if (static_cast<std::int64_t>(bytes.size()) != n * 4)
    throw io_error("blob size mismatch for " + bin_path + ": expected " +
                   std::to_string(n * 4) + " bytes, got " + std::to_string(bytes.size()));
  std::vector<float> data(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    data[static_cast<std::size_t>(i)] = std::bit_cast<float>(decode_le32(bytes.data() + 4 * i));
  }
  return {h, std::move(data)};
}

std::pair<TensorHeader, std::vector<std::int32_t>> load_i32_volume(const std::string& bin_path) {
  TensorHeader h = load_sidecar(bin_path);
  if (h.dtype != "i32" || h.order != "xyz" || h.shape.size() != 3)
    throw io_error("expected 3-D i32 xyz volume: " + bin_path);
  std::vector<unsigned char> bytes = read_bytes(bin_path);
  std::int64_t n = element_count(h.shape);
  if (static_cast<std::int64_t>(bytes.size()) != n * 4)
    throw io_error("blob size mismatch for " + bin_path + ": expected " +
                   std::to_string(n * 4) + " bytes, got " + std::to_string(bytes.size()));
  std::vector<std::int32_t> data(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    data[static_cast<std::size_t>(i)] =
        static_cast<std::int32_t>(decode_le32(bytes.data() + 4 * i));
  }
  return {h, std::move(data)};
}

ZooManifest load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("missing manifest: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw io_error("malformed manifest " + path + ": " + e.what());
  }

  ZooManifest m;
  m.root_dir = fs::path(path).parent_path().string();
  auto resolve = [&m](const std::string& p) {
    fs::path fp(p);
    if (fp.is_absolute() || m.root_dir.empty()) return p;
    return (fs::path(m.root_dir) / fp).string();
  };

  try {
    const json& t = j.at("task");
    m.task.name = t.at("name").get<std::string>();
    m.task.num_classes = t.at("num_classes").get<int>();
    for (const auto& c : t.at("cases")) {
      m.task.label_volume_paths.push_back(resolve(c.get<std::string>()));
    }
    for (const auto& jm : j.at("models")) {
      ModelEntry e;
      e.model_id = jm.at("id").get<std::string>();
      if (jm.contains("dice")) e.dice = jm.at("dice").get<double>();
      for (const auto& js : jm.at("stages")) {
        StageRef ref;
        ref.role = parse_role(js, "model " + e.model_id);
        if (js.contains("paths")) {
          for (const auto& p : js.at("paths")) ref.paths.push_back(resolve(p.get<std::string>()));
        } else {
          ref.paths.push_back(resolve(js.at("path").get<std::string>()));
        }
        e.stages.push_back(std::move(ref));
      }
      m.models.push_back(std::move(e));
    }
  } catch (const json::exception& e) {
    throw io_error("malformed manifest " + path + ": " + e.what());
  }

  if (m.task.num_classes < 1) throw io_error("manifest: num_classes must be >= 1");
  if (m.task.label_volume_paths.empty()) throw io_error("manifest: no cases listed");

  std::set<std::string> ids;
  for (const auto& e : m.models) {
    if (!ids.insert(e.model_id).second)
      throw io_error("duplicate model id '" + e.model_id + "' in manifest");
    bool has_dec = false, has_enc = false;
    for (const auto& s : e.stages) {
      has_dec |= s.role.kind == StageRole::Kind::Decoder;
      has_enc |= s.role.kind == StageRole::Kind::Encoder;
      if (static_cast<int>(s.paths.size()) != m.task.num_cases())
        throw io_error("model " + e.model_id + " stage " + s.role.to_string() + ": " +
                       std::to_string(s.paths.size()) + " tensor paths for " +
                       std::to_string(m.task.num_cases()) + " cases");
    }
    if (!has_dec || !has_enc)
      throw io_error("model " + e.model_id +
                     ": manifest must list at least one decoder and one encoder stage");
  }

  // Label volumes are read now: the num_classes invariant needs the data.
  std::int32_t max_label = -1;
  std::vector<std::array<std::int64_t, 3>> case_shapes;
  for (const auto& lp : m.task.label_volume_paths) {
    auto [h, labels] = load_i32_volume(lp);
    case_shapes.push_back({h.shape[0], h.shape[1], h.shape[2]});
    for (std::int32_t v : labels) {
      if (v < 0) throw io_error("negative label in " + lp);
      max_label = std::max(max_label, v);
    }
  }
  if (max_label + 1 != m.task.num_classes)
    throw io_error("manifest: num_classes " + std::to_string(m.task.num_classes) +
                   " does not match max label + 1 = " + std::to_string(max_label + 1));

  // Stage tensors: existence + sidecar shape checks, data left on disk.
  for (const auto& e : m.models) {
    for (const auto& s : e.stages) {
      for (std::size_t c = 0; c < s.paths.size(); ++c) {
        if (!fs::exists(s.paths[c])) throw io_error("missing file: " + s.paths[c]);
        TensorHeader h = load_sidecar(s.paths[c]);
        if (h.shape.size() != 4 || h.dtype != "f32")
          throw io_error("expected 4-D f32 tensor: " + s.paths[c]);
        std::array<std::int64_t, 3> tgrid{h.shape[1], h.shape[2], h.shape[3]};
        if (!proportional_shapes(tgrid, case_shapes[c]))
          throw io_error("shape mismatch: tensor " + s.paths[c] + " grid vs label volume " +
                         m.task.label_volume_paths[c]);
      }
    }
  }
  return m;
}

StageFeatureDump load_stage_dump(const ZooManifest& manifest, const ModelEntry& entry,
                                 const StageRole& stage, int case_index) {
  const StageRef* ref = nullptr;
  for (const auto& s : entry.stages) {
    if (s.role == stage) ref = &s;
  }
  if (ref == nullptr)
    throw data_error("model " + entry.model_id + " has no stage " + stage.to_string());
  if (case_index < 0 || case_index >= manifest.task.num_cases())
    throw data_error("case index out of range: " + std::to_string(case_index));

  StageFeatureDump d;
  d.stage = stage;
  d.num_classes = manifest.task.num_classes;

  auto [th, tensor] = load_f32_tensor(ref->paths[static_cast<std::size_t>(case_index)]);
  d.tensor = std::move(tensor);
  d.tensor_shape = {th.shape[0], th.shape[1], th.shape[2], th.shape[3]};

  auto [lh, labels] =
      load_i32_volume(manifest.task.label_volume_paths[static_cast<std::size_t>(case_index)]);
  d.labels = std::move(labels);
  d.label_shape = {lh.shape[0], lh.shape[1], lh.shape[2]};

  if (!proportional_shapes(d.feature_grid(), d.label_shape))
    throw data_error("shape mismatch between tensor grid and label volume for model " +
                     entry.model_id + " stage " + stage.to_string());
  for (std::int32_t v : d.labels) {
    if (v < 0 || v >= manifest.task.num_classes)
      throw data_error("label " + std::to_string(v) + " out of range for " +
                       std::to_string(manifest.task.num_classes) + " classes");
  }
  return d;
}

}  // namespace topo
