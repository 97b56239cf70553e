// ltt/core/checkpoint.cc

// Copyright 2026  LTT Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "ltt/core/checkpoint.h"

#include <cstring>
#include <fstream>

namespace ltt {

namespace {

constexpr char kMagic[4] = {'L', 'T', 'C', 'K'};
constexpr uint32_t kVersion = 1;

void WriteU32(std::ostream& os, uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v & 0xFF),
                        static_cast<unsigned char>((v >> 8) & 0xFF),
                        static_cast<unsigned char>((v >> 16) & 0xFF),
                        static_cast<unsigned char>((v >> 24) & 0xFF)};
  os.write(reinterpret_cast<const char*>(b), 4);
}

uint32_t ReadU32(std::istream& is) {
  unsigned char b[4];
  is.read(reinterpret_cast<char*>(b), 4);
  return static_cast<uint32_t>(b[0]) | (static_cast<uint32_t>(b[1]) << 8) |
         (static_cast<uint32_t>(b[2]) << 16) |
         (static_cast<uint32_t>(b[3]) << 24);
}

void WriteF32(std::ostream& os, float f) {
  uint32_t v;
  std::memcpy(&v, &f, 4);
  WriteU32(os, v);
}

float ReadF32(std::istream& is) {
  uint32_t v = ReadU32(is);
  float f;
  std::memcpy(&f, &v, 4);
  return f;
}

}  // namespace

void SaveCheckpoint(const std::string& path,
                    const std::vector<CheckpointEntry>& entries) {
  std::ofstream os(path, std::ios::binary);
  LTT_CHECK_DATA(os.good(), "checkpoint: cannot open '", path,
                 "' for writing");
  os.write(kMagic, 4);
  WriteU32(os, kVersion);
  WriteU32(os, static_cast<uint32_t>(entries.size()));
  for (const auto& e : entries) {
    WriteU32(os, static_cast<uint32_t>(e.name.size()));
    os.write(e.name.data(), static_cast<std::streamsize>(e.name.size()));
    WriteU32(os, static_cast<uint32_t>(e.shape.size()));
    for (int64_t d : e.shape) WriteU32(os, static_cast<uint32_t>(d));
    for (double v : e.values) WriteF32(os, static_cast<float>(v));
  }
  LTT_CHECK_DATA(os.good(), "checkpoint: write to '", path, "' failed");
}

std::vector<CheckpointEntry> LoadCheckpoint(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  LTT_CHECK_DATA(is.good(), "checkpoint: cannot open '", path, "'");
  char magic[4];
  is.read(magic, 4);
  LTT_CHECK_DATA(is.good() && std::memcmp(magic, kMagic, 4) == 0,
                 "checkpoint: '", path, "' is not an LTCK file");
  uint32_t version = ReadU32(is);
  LTT_CHECK_DATA(version == kVersion, "checkpoint: unsupported version ",
                 version);
  uint32_t count = ReadU32(is);
  std::vector<CheckpointEntry> entries;
  entries.reserve(count);
  for (uint32_t i = 0; i < count; ++i) {
    CheckpointEntry e;
    uint32_t name_len = ReadU32(is);
    LTT_CHECK_DATA(is.good() && name_len <= 4096,
                   "checkpoint: corrupt name length in '", path, "'");
    e.name.resize(name_len);
    is.read(e.name.data(), name_len);
    uint32_t rank = ReadU32(is);
    LTT_CHECK_DATA(is.good() && rank <= 8, "checkpoint: corrupt rank in '",
                   path, "'");
    e.shape.resize(rank);
    int64_t numel = 1;
    for (uint32_t r = 0; r < rank; ++r) {
      e.shape[r] = static_cast<int64_t>(ReadU32(is));
      numel *= e.shape[r];
    }
    LTT_CHECK_DATA(is.good() && numel >= 0 && numel <= (1LL << 31),
                   "checkpoint: corrupt tensor size in '", path, "'");
    e.values.resize(numel);
    for (int64_t j = 0; j < numel; ++j)
      e.values[j] = static_cast<double>(ReadF32(is));
    LTT_CHECK_DATA(is.good(), "checkpoint: truncated file '", path, "'");
    entries.push_back(std::move(e));
  }
  return entries;
}

void SaveParams(const std::string& path, const ParameterStore& store) {
  std::vector<CheckpointEntry> entries;
  for (const std::string& name : store.Names()) {
    Tensor t = store.Get(name);
    entries.push_back({name, t.GetShape(), t.Data()});
  }
  SaveCheckpoint(path, entries);
}

void LoadParamsInto(const std::string& path, ParameterStore* store) {
  auto entries = LoadCheckpoint(path);
  LTT_CHECK_DATA(entries.size() == store->Names().size(),
                 "checkpoint: '", path, "' holds ", entries.size(),
                 " tensors, model expects ", store->Names().size());
  for (size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    LTT_CHECK_DATA(store->Has(e.name), "checkpoint: unexpected tensor '",
                   e.name, "'");
    Tensor t = store->Get(e.name);
    LTT_CHECK_DATA(t.GetShape() == e.shape, "checkpoint: tensor '", e.name,
                   "' has shape ", ShapeStr(e.shape), ", model expects ",
                   ShapeStr(t.GetShape()));
    auto& data = t.MutableData();
    for (size_t j = 0; j < data.size(); ++j) data[j] = e.values[j];
  }
}

}  // namespace ltt
