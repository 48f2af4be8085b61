// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "catbreak/io.h"

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "catbreak/attacks.h"
#include "catbreak/embed_mlp.h"
#include "catbreak/error.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace catbreak {
namespace {

class IoTest : public ::testing::Test {
 protected:
  IoTest() : dir_(std::filesystem::temp_directory_path() / "catbreak_io_test") {
    std::filesystem::remove_all(dir_);
    std::filesystem::create_directories(dir_);
  }
  ~IoTest() override { std::filesystem::remove_all(dir_); }

  std::string Path(const std::string& name) const { return (dir_ / name).string(); }

  void WriteText(const std::string& name, const std::string& text) const {
    std::ofstream(Path(name), std::ios::binary) << text;
  }

  static ErrorCode CodeOf(const auto& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    ADD_FAILURE() << "expected an Error";
    return ErrorCode::kInvalidArg;
  }

  std::filesystem::path dir_;
};

TEST_F(IoTest, ModelRoundTripIsExact) {
  const EmbedMlpModel model = MakeRandomClassifier({3, 5, 2}, 4, {6, 5}, 3, 77);
  SaveModel(model, Path("m.bin"));
  const EmbedMlpModel back = LoadModel(Path("m.bin"));
  EXPECT_EQ(back.values_per_feature(), model.values_per_feature());
  EXPECT_EQ(back.embeddings().flat(), model.embeddings().flat());
  ASSERT_EQ(back.layers().size(), model.layers().size());
  for (size_t l = 0; l < model.layers().size(); ++l) {
    EXPECT_EQ(back.layers()[l].weights, model.layers()[l].weights);
    EXPECT_EQ(back.layers()[l].bias, model.layers()[l].bias);
  }
  EXPECT_EQ(back.seed(), 77u);
  const Instance inst{{2, kAbsent, 1}, 0};
  EXPECT_EQ(back.Predict(inst), model.Predict(inst));
}

TEST_F(IoTest, CorruptModelsAreRejected) {
  const EmbedMlpModel model = testing::HandModel();
  SaveModel(model, Path("m.bin"));
  std::string bytes;
  {
    std::ifstream in(Path("m.bin"), std::ios::binary);
    bytes.assign(std::istreambuf_iterator<char>(in), {});
  }
  WriteText("truncated.bin", bytes.substr(0, bytes.size() - 8));
  EXPECT_EQ(CodeOf([&] { LoadModel(Path("truncated.bin")); }), ErrorCode::kIo);
  WriteText("trailing.bin", bytes + "x");
  EXPECT_EQ(CodeOf([&] { LoadModel(Path("trailing.bin")); }), ErrorCode::kIo);
  WriteText("header.bin", "{not json\n");
  EXPECT_EQ(CodeOf([&] { LoadModel(Path("header.bin")); }), ErrorCode::kIo);
  WriteText("version.bin", "{\"version\":\"other\"}\n");
  EXPECT_EQ(CodeOf([&] { LoadModel(Path("version.bin")); }), ErrorCode::kIo);
  EXPECT_EQ(CodeOf([&] { LoadModel(Path("missing.bin")); }), ErrorCode::kIo);
  // An embedding file is not a model file.
  SaveEmbeddings(model.embeddings(), Path("e.bin"));
  EXPECT_EQ(CodeOf([&] { LoadModel(Path("e.bin")); }), ErrorCode::kIo);
}

TEST_F(IoTest, EmbeddingRoundTrip) {
  const EmbedMlpModel model = testing::HandModel();
  SaveEmbeddings(model.embeddings(), Path("e.bin"));
  const EmbeddingTable back = LoadEmbeddings(Path("e.bin"));
  EXPECT_EQ(back.values_per_feature(), model.embeddings().values_per_feature());
  EXPECT_EQ(back.dim(), 2);
  EXPECT_EQ(back.flat(), model.embeddings().flat());
}

TEST_F(IoTest, DatasetRoundTripKeepsAbsentValues) {
  const std::vector<Instance> data = {{{0, kAbsent, 2}, 1}, {{1, 1, 0}, 0}};
  SaveDataset(data, Path("d.jsonl"));
  EXPECT_EQ(LoadDataset(Path("d.jsonl")), data);
  EXPECT_EQ(InstanceToJson(data[0]), R"({"categories":[0,null,2],"label":1})");
  EXPECT_EQ(InstanceFromJson(R"({"label": 1, "categories": [0, null, 2]})"), data[0]);
}

TEST_F(IoTest, DatasetErrorsNameTheLine) {
  WriteText("d.jsonl", "{\"categories\":[0],\"label\":0}\n\n{\"categories\":[0]}\n");
  try {
    LoadDataset(Path("d.jsonl"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
    EXPECT_NE(std::string(e.what()).find(":3:"), std::string::npos) << e.what();
  }
  EXPECT_EQ(CodeOf([] { InstanceFromJson("[1,2]"); }), ErrorCode::kIo);
}

TEST_F(IoTest, AttackResultJson) {
  AttackResult r;
  r.method = Method::kFsgs;
  r.success = true;
  r.perturbation.edits = {{1, EditKind::kSubstitute, 2}, {3, EditKind::kDelete, std::nullopt}};
  r.changed = 2;
  r.queries = 12;
  r.wall_time_s = 0.5;
  TraceStep step;
  step.feature = 1;
  step.value = 2;
  step.arms = {1, 3};
  step.success_check_fired = true;
  r.trace.push_back(step);
  const std::string with_time = AttackResultToJson(r);
  const std::string without = AttackResultToJson(r, false);
  EXPECT_NE(with_time.find("\"wall_time_s\":0.5"), std::string::npos);
  EXPECT_EQ(without.find("wall_time_s"), std::string::npos);
  EXPECT_NE(without.find(R"({"feature":3,"kind":"delete","value":null})"), std::string::npos);
  EXPECT_NE(without.find("\"arms\":[1,3]"), std::string::npos);
  EXPECT_NE(without.find("\"success_check_fired\":true"), std::string::npos);
  EXPECT_NE(without.find("\"method\":\"fsgs\""), std::string::npos);
}

}  // namespace
}  // namespace catbreak
