#include <iostream>
int main() { std::cout << "hpd\n"; return 0; }
