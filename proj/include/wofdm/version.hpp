// SPDX-License-Identifier: Apache-2.0
#pragma once

#define WOFDM_VERSION_MAJOR 0
#define WOFDM_VERSION_MINOR 1
#define WOFDM_VERSION_PATCH 0
#define WOFDM_VERSION_STRING "0.1.0"
