// ltt/data/feature-io.cc

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

#include "ltt/data/feature-io.h"

#include <cstring>
#include <fstream>

#include "ltt/core/common.h"

namespace ltt {

namespace {

constexpr char kMagic[4] = {'L', 'T', 'F', 'T'};
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

}  // namespace

void WriteFeatureFile(const std::string& path, const FeatureSequence& feats) {
  LTT_CHECK_DATA(static_cast<int64_t>(feats.data.size()) ==
                     feats.num_frames * feats.dim,
                 "features: data size ", feats.data.size(), " != ",
                 feats.num_frames, "x", feats.dim);
  std::ofstream os(path, std::ios::binary);
  LTT_CHECK_DATA(os.good(), "features: cannot write '", path, "'");
  os.write(kMagic, 4);
  WriteU32(os, kVersion);
  WriteU32(os, static_cast<uint32_t>(feats.num_frames));
  WriteU32(os, static_cast<uint32_t>(feats.dim));
  for (float f : feats.data) {
    uint32_t v;
    std::memcpy(&v, &f, 4);
    WriteU32(os, v);
  }
  LTT_CHECK_DATA(os.good(), "features: write to '", path, "' failed");
}

FeatureSequence ReadFeatureFile(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  LTT_CHECK_DATA(is.good(), "features: cannot open '", path, "'");
  char magic[4];
  is.read(magic, 4);
  LTT_CHECK_DATA(is.good() && std::memcmp(magic, kMagic, 4) == 0,
                 "features: '", path, "' is not an LTFT file");
  uint32_t version = ReadU32(is);
  LTT_CHECK_DATA(version == kVersion, "features: unsupported version ",
                 version);
  FeatureSequence feats;
  feats.num_frames = static_cast<int64_t>(ReadU32(is));
  feats.dim = static_cast<int64_t>(ReadU32(is));
  LTT_CHECK_DATA(is.good() && feats.num_frames >= 0 && feats.dim >= 0 &&
                     feats.num_frames * feats.dim <= (1LL << 30),
                 "features: corrupt header in '", path, "'");
  feats.data.resize(feats.num_frames * feats.dim);
  for (auto& f : feats.data) {
    uint32_t v = ReadU32(is);
    std::memcpy(&f, &v, 4);
  }
  LTT_CHECK_DATA(is.good(), "features: truncated file '", path, "'");
  return feats;
}

}  // namespace ltt
