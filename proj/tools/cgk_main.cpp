#include <iostream>

int main() {
  std::cout << "cgk placeholder\n";
  return 0;
}
