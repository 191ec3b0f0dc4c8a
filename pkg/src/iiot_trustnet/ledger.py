"""Private append-only hash-chained ledger.

One chain per industrial process phase. Blocks are hashed over a canonical
big-endian byte serialization so digests and on-disk dumps are bit-exact
across platforms. Appends are gated on the miner's trust factor; tampering
helpers model the attacker for detection tests.
"""

from __future__ import annotations

import hashlib
import struct
from dataclasses import dataclass, replace
from enum import Enum
from typing import BinaryIO

HASH_SIZE = 32
ZERO_HASH = bytes(HASH_SIZE)


class LedgerIntegrityError(RuntimeError):
    """Raised when an append is attempted on a structurally broken chain."""


class Phase(Enum):
    MANUFACTURING = 0
    STORAGE = 1
    SHIPPING = 2
    MONITORING = 3
    GENERIC = 4


class TamperKind(Enum):
    PAYLOAD_FLIP = "payload_flip"   # mutate record bytes, leave the stored hash stale
    HASH_FIXUP = "hash_fixup"       # mutate and recompute the block's own hash
    DELETE_BLOCK = "delete_block"   # drop the block, leaving a gap


@dataclass(frozen=True)
class Record:
    """One process event bound for a phase chain."""

    device_id: int
    phase: Phase
    payload: bytes
    tick: int

    def __post_init__(self):
        if not self.payload:
            raise ValueError("record payload must be non-empty")
        if self.device_id < 0 or self.tick < 0:
            raise ValueError("device_id and tick must be non-negative")


@dataclass(frozen=True)
class Block:
    index: int
    prev_hash: bytes
    records: tuple[Record, ...]
    timestamp_tick: int
    hash: bytes


def serialize_block_body(
    index: int, prev_hash: bytes, records: tuple[Record, ...], tick: int
) -> bytes:
    """Canonical byte layout used for both hashing and chain dumps."""
    if len(prev_hash) != HASH_SIZE:
        raise ValueError(f"prev_hash must be {HASH_SIZE} bytes")
    parts = [struct.pack(">Q", index), prev_hash, struct.pack(">Q", tick),
             struct.pack(">I", len(records))]
    for rec in records:
        parts.append(struct.pack(">Q", rec.device_id))
        parts.append(struct.pack(">B", rec.phase.value))
        parts.append(struct.pack(">Q", rec.tick))
        parts.append(struct.pack(">I", len(rec.payload)))
        parts.append(rec.payload)
    return b"".join(parts)


def hash_block(
    index: int, prev_hash: bytes, records: tuple[Record, ...], tick: int
) -> bytes:
    """SHA-256 digest of the canonical block serialization."""
    return hashlib.sha256(serialize_block_body(index, prev_hash, records, tick)).digest()


def _make_block(
    index: int, prev_hash: bytes, records: tuple[Record, ...], tick: int
) -> Block:
    return Block(
        index=index,
        prev_hash=prev_hash,
        records=records,
        timestamp_tick=tick,
        hash=hash_block(index, prev_hash, records, tick),
    )


class Ledger:
    """Single-phase chain. Owned by one writer; validation is read-only."""

    def __init__(self, phase: Phase, blocks: list[Block] | None = None):
        self.phase = phase
        self.blocks: list[Block] = blocks if blocks is not None else []

    @classmethod
    def genesis(cls, phase: Phase) -> "Ledger":
        return cls(phase, [_make_block(0, ZERO_HASH, (), 0)])

    def __len__(self) -> int:
        return len(self.blocks)

    def tail(self) -> Block:
        return self.blocks[-1]

    def append_record(self, record: Record, miner_tf: int) -> Block | None:
        """Append one record as a new block; returns None when the miner is
        untrusted (tf == 0). Refuses to grow a chain whose tail is broken."""
        if record.phase is not self.phase:
            raise ValueError(f"record phase {record.phase} does not match chain {self.phase}")
        if miner_tf == 0:
            return None
        if not self.blocks:
            raise LedgerIntegrityError("chain has no genesis block")
        tail = self.tail()
        if tail.index != len(self.blocks) - 1 or tail.hash != hash_block(
            tail.index, tail.prev_hash, tail.records, tail.timestamp_tick
        ):
            raise LedgerIntegrityError("chain tail is inconsistent; append refused")
        block = _make_block(len(self.blocks), tail.hash, (record,), record.tick)
        self.blocks.append(block)
        return block

    def copy(self) -> "Ledger":
        # blocks are immutable, so a shallow list copy is a full snapshot
        return Ledger(self.phase, list(self.blocks))


def validate_chain(ledger: Ledger) -> int | None:
    """Walk the chain; return the smallest broken position or None if intact.

    A position fails when its stored index is wrong, its stored hash does not
    match recomputation, or its prev_hash does not match the predecessor.
    """
    for i, block in enumerate(ledger.blocks):
        if block.index != i:
            return i
        expected_prev = ZERO_HASH if i == 0 else ledger.blocks[i - 1].hash
        if block.prev_hash != expected_prev:
            return i
        if block.hash != hash_block(
            block.index, block.prev_hash, block.records, block.timestamp_tick
        ):
            return i
    return None


def _flip_payload(block: Block) -> Block:
    if not block.records:
        raise ValueError("block has no records to mutate")
    rec = block.records[0]
    mutated = replace(rec, payload=bytes([rec.payload[0] ^ 0xFF]) + rec.payload[1:])
    return replace(block, records=(mutated,) + block.records[1:])


def tamper(ledger: Ledger, index: int, mutation: TamperKind) -> Ledger:
    """Return the attacker's mutated view of the chain; no revalidation.

    Genesis is protected (index >= 1). HASH_FIXUP and DELETE_BLOCK
    additionally need a successor block: a recomputed tip hash is
    self-consistent and a truncated tip is a valid prefix, so only the broken
    link to a following block can betray those edits.
    """
    if not 1 <= index < len(ledger.blocks):
        raise ValueError(f"tamper index {index} out of range for chain of {len(ledger.blocks)}")
    mutated = ledger.copy()
    if mutation is TamperKind.PAYLOAD_FLIP:
        mutated.blocks[index] = _flip_payload(mutated.blocks[index])
    elif mutation is TamperKind.HASH_FIXUP:
        if index == len(ledger.blocks) - 1:
            raise ValueError("hash fixup on the tail block has no successor to contradict")
        block = _flip_payload(mutated.blocks[index])
        mutated.blocks[index] = replace(
            block,
            hash=hash_block(block.index, block.prev_hash, block.records, block.timestamp_tick),
        )
    elif mutation is TamperKind.DELETE_BLOCK:
        if index == len(ledger.blocks) - 1:
            raise ValueError("deleting the tail block leaves a valid prefix")
        del mutated.blocks[index]
    else:
        raise ValueError(f"unknown mutation {mutation!r}")
    return mutated


def dump_chain(ledger: Ledger, stream: BinaryIO) -> None:
    """Write blocks in index order, each prefixed by its 4-byte body length."""
    for block in ledger.blocks:
        body = serialize_block_body(
            block.index, block.prev_hash, block.records, block.timestamp_tick
        )
        stream.write(struct.pack(">I", len(body)))
        stream.write(body)


def load_chain(stream: BinaryIO, phase: Phase) -> Ledger:
    """Read a chain dump; stored hashes are recomputed from the bodies."""
    blocks: list[Block] = []
    while True:
        prefix = stream.read(4)
        if not prefix:
            break
        if len(prefix) != 4:
            raise ValueError("truncated block length prefix")
        (length,) = struct.unpack(">I", prefix)
        body = stream.read(length)
        if len(body) != length:
            raise ValueError("truncated block body")
        blocks.append(_parse_block_body(body))
    return Ledger(phase, blocks)


def _parse_block_body(body: bytes) -> Block:
    offset = 0

    def take(n: int) -> bytes:
        nonlocal offset
        chunk = body[offset:offset + n]
        if len(chunk) != n:
            raise ValueError("malformed block body")
        offset += n
        return chunk

    (index,) = struct.unpack(">Q", take(8))
    prev_hash = take(HASH_SIZE)
    (tick,) = struct.unpack(">Q", take(8))
    (count,) = struct.unpack(">I", take(4))
    records = []
    for _ in range(count):
        (device_id,) = struct.unpack(">Q", take(8))
        (phase_code,) = struct.unpack(">B", take(1))
        (rec_tick,) = struct.unpack(">Q", take(8))
        (payload_len,) = struct.unpack(">I", take(4))
        payload = take(payload_len)
        records.append(Record(device_id, Phase(phase_code), payload, rec_tick))
    if offset != len(body):
        raise ValueError("trailing bytes in block body")
    return _make_block(index, prev_hash, tuple(records), tick)
