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


#include "eval/trainer_client.hpp"

#include <spawn.h>
#include <sys/wait.h>

#include "core/error.hpp"
#include "core/io.hpp"
#include "core/log.hpp"

extern char** environ;

namespace fs = std::filesystem;

namespace tbench::eval {

int run_process(const std::vector<std::string>& argv) {
  if (argv.empty()) return -1;
  std::vector<char*> args;
  for (const auto& a : argv) args.push_back(const_cast<char*>(a.c_str()));
  args.push_back(nullptr);
  pid_t pid = 0;
  if (posix_spawnp(&pid, args[0], nullptr, nullptr, args.data(), environ) != 0) return -1;
  int status = 0;
  if (waitpid(pid, &status, 0) < 0) return -1;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Json default_hyperparameters() {
  return Json{{"rank", 16}, {"alpha", 32}, {"learning_rate", 5e-4}, {"dropout", 0.1}, {"batch_size", 1}, {"epochs", 5}};
}

TrainerClient::TrainerClient(std::vector<std::string> command, fs::path work_dir, std::uint64_t seed)
    : command_(std::move(command)), work_dir_(std::move(work_dir)), seed_(seed) {
  if (command_.empty()) throw Error(ErrorKind::kUsage, "empty trainer command");
}

fs::path TrainerClient::job_dir(const std::string& model_id, const LanguageCode& train_language) const {
  return work_dir_ / model_id / train_language;
}

void TrainerClient::invoke(const std::string& action, const Json& job, const fs::path& job_file) const {
  io::write_file(job_file, job.dump(2) + "\n");
  std::vector<std::string> argv = command_;
  argv.insert(argv.end(), {action, "--job", job_file.string()});
  log::info("trainer " + action + " " + job_file.string());
  const int rc = run_process(argv);
  if (rc == -1) throw Error(ErrorKind::kTrainerUnavailable, "could not run '" + command_.front() + "'");
  if (rc != 0) {
    throw Error(ErrorKind::kTrainerUnavailable,
                "'" + command_.front() + " " + action + "' exited with status " + std::to_string(rc));
  }
}

std::vector<std::string> TrainerClient::train(const std::string& model_id, const LanguageCode& train_language,
                                              const fs::path& documents) {
  const fs::path dir = job_dir(model_id, train_language);
  const Json job{{"action", "train"},
                 {"model_id", model_id},
                 {"train_language", train_language},
                 {"train_documents", fs::absolute(documents).string()},
                 {"hyperparameters", default_hyperparameters()},
                 {"seed", seed_},
                 {"output_dir", fs::absolute(dir).string()}};
  invoke("train", job, dir / "train_job.json");
  const fs::path out = dir / "checkpoints.json";
  try {
    const Json j = Json::parse(io::read_file(out));
    auto cps = j.at("checkpoints").get<std::vector<std::string>>();
    if (cps.empty()) throw Error(ErrorKind::kTrainerUnavailable, out.string() + " lists no checkpoints");
    return cps;
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::kTrainerUnavailable, out.string() + ": " + e.what());
  }
}

std::string TrainerClient::select(const std::string& model_id, const LanguageCode& train_language,
                                  const std::vector<std::string>& checkpoints, const fs::path& validation_qas) {
  const fs::path dir = job_dir(model_id, train_language);
  const Json job{{"action", "select"},
                 {"model_id", model_id},
                 {"train_language", train_language},
                 {"checkpoints", checkpoints},
                 {"validation_qas", fs::absolute(validation_qas).string()},
                 {"seed", seed_},
                 {"output_dir", fs::absolute(dir).string()}};
  invoke("select", job, dir / "select_job.json");
  const fs::path out = dir / "selected.json";
  try {
    return Json::parse(io::read_file(out)).at("checkpoint").get<std::string>();
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::kTrainerUnavailable, out.string() + ": " + e.what());
  }
}

fs::path TrainerClient::predict(const std::string& model_id, const LanguageCode& train_language,
                                const std::string& checkpoint, const fs::path& qa_file, const LanguageCode& language) {
  const fs::path dir = job_dir(model_id, train_language);
  const fs::path out = dir / ("predictions_" + language + ".jsonl");
  const Json job{{"action", "predict"},
                 {"model_id", model_id},
                 {"train_language", train_language},
                 {"checkpoint", checkpoint},
                 {"qa_file", fs::absolute(qa_file).string()},
                 {"language", language},
                 {"temperature", 0.0},
                 {"seed", seed_},
                 {"output", fs::absolute(out).string()}};
  invoke("predict", job, dir / ("predict_job_" + language + ".json"));
  if (!fs::exists(out)) throw Error(ErrorKind::kTrainerUnavailable, "trainer wrote no " + out.string());
  return out;
}

}  // namespace tbench::eval
