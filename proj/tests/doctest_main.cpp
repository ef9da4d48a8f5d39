/**
 * @file doctest_main.cpp
 * @brief Test runner entry point; the framework supplies main().
 */

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
