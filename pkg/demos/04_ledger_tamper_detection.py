"""Build a phase chain, attack it three ways, watch every edit get caught."""

import io

from iiot_trustnet.ledger import (
    Ledger,
    Phase,
    Record,
    TamperKind,
    dump_chain,
    load_chain,
    tamper,
    validate_chain,
)

print("=" * 60)
print("1. Growing the manufacturing chain")
print("=" * 60)
chain = Ledger.genesis(Phase.MANUFACTURING)
for i in range(8):
    chain.append_record(
        Record(device_id=i % 3, phase=Phase.MANUFACTURING,
               payload=f"unit-{i}:ok".encode(), tick=i),
        miner_tf=1,
    )
print(f"  chain length {len(chain)}, valid: {validate_chain(chain) is None}")
print(f"  tail hash: {chain.tail().hash.hex()[:16]}...")

untrusted = chain.append_record(
    Record(device_id=9, phase=Phase.MANUFACTURING, payload=b"forged", tick=99),
    miner_tf=0,
)
print(f"  append by untrusted miner returned: {untrusted} (chain still {len(chain)} blocks)")

print()
print("=" * 60)
print("2. Three kinds of tampering, all detected")
print("=" * 60)
for kind, index in [
    (TamperKind.PAYLOAD_FLIP, 3),
    (TamperKind.HASH_FIXUP, 3),
    (TamperKind.DELETE_BLOCK, 3),
]:
    mutated = tamper(chain, index, kind)
    bad = validate_chain(mutated)
    print(f"  {kind.value:13s} at block {index} -> invalid at index {bad}")
print(f"  original chain untouched, valid: {validate_chain(chain) is None}")

print()
print("=" * 60)
print("3. Dump and reload, bit for bit")
print("=" * 60)
buffer = io.BytesIO()
dump_chain(chain, buffer)
print(f"  dump size: {len(buffer.getvalue())} bytes")
buffer.seek(0)
reloaded = load_chain(buffer, Phase.MANUFACTURING)
print(f"  reloaded {len(reloaded)} blocks, valid: {validate_chain(reloaded) is None}")
print(f"  hashes identical: {[b.hash for b in reloaded.blocks] == [b.hash for b in chain.blocks]}")
