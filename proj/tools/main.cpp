// SPDX-License-Identifier: Apache-2.0
#include "qzeno/cli.hpp"

int main(int argc, char** argv)
{
    return qzeno::cli::main_entry(argc, argv);
}
