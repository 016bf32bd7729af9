#pragma once

#define ZEROONE_VERSION "0.1.0"
