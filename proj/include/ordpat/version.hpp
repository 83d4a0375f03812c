#pragma once

#define ORDPAT_VERSION_MAJOR 0
#define ORDPAT_VERSION_MINOR 1
#define ORDPAT_VERSION_PATCH 0
#define ORDPAT_VERSION "0.1.0"
