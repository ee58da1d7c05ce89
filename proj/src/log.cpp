#include "volmodel/log.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <mutex>

namespace volmodel::logging {

namespace {

Level parse_env_level() {
  const char* env = std::getenv("VOLMODEL_LOG");
  if (env == nullptr) return Level::Warn;
  if (std::strcmp(env, "error") == 0) return Level::Error;
  if (std::strcmp(env, "warn") == 0) return Level::Warn;
  if (std::strcmp(env, "info") == 0) return Level::Info;
  if (std::strcmp(env, "debug") == 0) return Level::Debug;
  std::fprintf(stderr, "[warn] VOLMODEL_LOG=%s not recognized, using warn\n", env);
  return Level::Warn;
}

const char* tag(Level lvl) {
  switch (lvl) {
    case Level::Error: return "error";
    case Level::Warn: return "warn";
    case Level::Info: return "info";
    case Level::Debug: return "debug";
  }
  return "?";
}

std::mutex g_mutex;

}  // namespace

Level level() {
  static const Level lvl = parse_env_level();
  return lvl;
}

bool enabled(Level lvl) { return static_cast<int>(lvl) <= static_cast<int>(level()); }

void vlogf(Level lvl, const char* fmt, std::va_list args) {
  if (!enabled(lvl)) return;
  std::lock_guard<std::mutex> lock(g_mutex);
  std::fprintf(stderr, "[%s] ", tag(lvl));
  std::vfprintf(stderr, fmt, args);
  std::fputc('\n', stderr);
}

void logf(Level lvl, const char* fmt, ...) {
  std::va_list args;
  va_start(args, fmt);
  vlogf(lvl, fmt, args);
  va_end(args);
}

#define VOLMODEL_LOG_FWD(name, lvl)            \
  void name(const char* fmt, ...) {            \
    std::va_list args;                         \
    va_start(args, fmt);                       \
    vlogf(lvl, fmt, args);                     \
    va_end(args);                              \
  }

VOLMODEL_LOG_FWD(errorf, Level::Error)
VOLMODEL_LOG_FWD(warnf, Level::Warn)
VOLMODEL_LOG_FWD(infof, Level::Info)
VOLMODEL_LOG_FWD(debugf, Level::Debug)

#undef VOLMODEL_LOG_FWD

}  // namespace volmodel::logging
