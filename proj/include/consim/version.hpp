#pragma once

#define CONSIM_VERSION_MAJOR 1
#define CONSIM_VERSION_MINOR 0
#define CONSIM_VERSION_PATCH 0
#define CONSIM_VERSION_STRING "1.0.0"
