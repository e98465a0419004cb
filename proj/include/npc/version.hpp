#ifndef NPC_VERSION_HPP
#define NPC_VERSION_HPP

namespace npc
{
inline constexpr const char *kToolName = "npckit";
inline constexpr const char *kToolVersion = "0.1.0";
}

#endif
