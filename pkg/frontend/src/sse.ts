// Incremental server-sent-events parsing. POST bodies rule out EventSource,
// so frames are split out of the fetch body stream by hand.

export class SseParser {
  private buffer = "";

  /** Feed a chunk; returns the JSON payloads of any completed frames. */
  push(chunk: string): unknown[] {
    this.buffer += chunk;
    const frames = this.buffer.split(/\r?\n\r?\n/);
    this.buffer = frames.pop() ?? "";
    const out: unknown[] = [];
    for (const frame of frames) {
      const dataLines: string[] = [];
      for (const line of frame.split(/\r?\n/)) {
        if (line.startsWith("data:")) {
          dataLines.push(line.slice(5).trimStart());
        }
      }
      if (dataLines.length === 0) continue;
      const data = dataLines.join("\n");
      if (data === "[DONE]") continue;
      out.push(JSON.parse(data));
    }
    return out;
  }
}

export async function* readSseStream(body: ReadableStream<Uint8Array>): AsyncGenerator<unknown> {
  const reader = body.getReader();
  const decoder = new TextDecoder("utf-8");
  const parser = new SseParser();
  for (;;) {
    const { value, done } = await reader.read();
    if (done) break;
    for (const frame of parser.push(decoder.decode(value, { stream: true }))) {
      yield frame;
    }
  }
  for (const frame of parser.push("\n\n")) {
    yield frame;
  }
}
