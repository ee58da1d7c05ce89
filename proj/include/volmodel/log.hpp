#pragma once

#include <cstdarg>

namespace volmodel::logging {

enum class Level { Error = 0, Warn = 1, Info = 2, Debug = 3 };

// Active level, parsed once from the VOLMODEL_LOG environment variable
// (error|warn|info|debug). Defaults to warn.
Level level();

bool enabled(Level lvl);

void vlogf(Level lvl, const char* fmt, std::va_list args);
void logf(Level lvl, const char* fmt, ...) __attribute__((format(printf, 2, 3)));

void errorf(const char* fmt, ...) __attribute__((format(printf, 1, 2)));
void warnf(const char* fmt, ...) __attribute__((format(printf, 1, 2)));
void infof(const char* fmt, ...) __attribute__((format(printf, 1, 2)));
void debugf(const char* fmt, ...) __attribute__((format(printf, 1, 2)));

}  // namespace volmodel::logging
