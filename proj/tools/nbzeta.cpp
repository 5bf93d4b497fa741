// Copyright 2026 The nbzeta Authors
// SPDX-License-Identifier: Apache-2.0
#include <nbzeta/cli.hpp>

#include <iostream>

int main(int argc, char** argv)
{
    return nbzeta::run_cli(argc, argv, std::cout, std::cerr);
}
