// Writes the audio fixture: 2 s mono 8 kHz PCM-16, linear chirp 200 Hz -> 3 kHz.
#include <iostream>

#include "wimax/audio_io.hpp"
#include "wimax/errors.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: gen_chirp <output.wav>\n";
    return 1;
  }
  try {
    wimax::audio::wav_write(argv[1], wimax::audio::make_chirp(8000, 2.0, 200.0, 3000.0));
  } catch (const wimax::Error& e) {
    std::cerr << "gen_chirp: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
