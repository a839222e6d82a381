import { mountPlayground } from "./ui";
import type { Sample } from "./ui";
import { WebSocketTransport } from "./transport";

function sessionUrl(): string {
  const scheme = location.protocol === "https:" ? "wss" : "ws";
  return `${scheme}://${location.host}/session`;
}

async function fetchSamples(): Promise<Sample[]> {
  try {
    const response = await fetch("/samples");
    if (!response.ok) {
      return [];
    }
    return (await response.json()) as Sample[];
  } catch {
    return [];
  }
}

async function boot(): Promise<void> {
  const root = document.getElementById("app");
  if (root === null) {
    throw new Error("missing #app container");
  }
  mountPlayground(root, {
    connect: () => new WebSocketTransport(sessionUrl()),
    samples: await fetchSamples(),
  });
}

void boot();
