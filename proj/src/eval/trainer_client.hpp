// Copyright 2026 The TransferBench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "core/types.hpp"

namespace tbench::eval {

// Runs argv to completion without a shell. Returns the exit status, or -1 when
// the program could not be started or was killed by a signal.
int run_process(const std::vector<std::string>& argv);

// LoRA defaults written into every train job.
Json default_hyperparameters();

// Drives the external trainer through `<command> train|select|predict --job <file>`.
// Job files and outputs live under work_dir. Any failed invocation throws
// Error(kTrainerUnavailable).
class TrainerClient {
 public:
  TrainerClient(std::vector<std::string> command, std::filesystem::path work_dir, std::uint64_t seed);

  // Writes <output_dir>/checkpoints.json {"checkpoints": [...]}.
  std::vector<std::string> train(const std::string& model_id, const LanguageCode& train_language,
                                 const std::filesystem::path& documents);
  // Writes <output_dir>/selected.json {"checkpoint": "..."}.
  std::string select(const std::string& model_id, const LanguageCode& train_language,
                     const std::vector<std::string>& checkpoints, const std::filesystem::path& validation_qas);
  // Writes prediction records to the returned path.
  std::filesystem::path predict(const std::string& model_id, const LanguageCode& train_language,
                                const std::string& checkpoint, const std::filesystem::path& qa_file,
                                const LanguageCode& language);

  std::filesystem::path job_dir(const std::string& model_id, const LanguageCode& train_language) const;

 private:
  void invoke(const std::string& action, const Json& job, const std::filesystem::path& job_file) const;

  std::vector<std::string> command_;
  std::filesystem::path work_dir_;
  std::uint64_t seed_;
};

}  // namespace tbench::eval
